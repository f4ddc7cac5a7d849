#include "equiweyl/isotypic.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>

#ifdef EQUIWEYL_HAVE_LAPACKE
#include <lapacke.h>
#endif

#include "equiweyl/errors.hpp"

namespace equiweyl {

std::vector<std::vector<int>> all_action_permutations(const InteriorIndex& interior,
                                                      const FiniteGroup& group) {
  std::vector<std::vector<int>> perms;
  perms.reserve(group.size());
  for (const auto& g : group.elements) perms.push_back(action_permutation(interior, g));
  return perms;
}

std::vector<std::vector<int>> grid_orbits(const std::vector<std::vector<int>>& perms, int n) {
  std::vector<int> orbit_of(n, -1);
  std::vector<std::vector<int>> orbits;
  for (int i = 0; i < n; ++i) {
    if (orbit_of[i] >= 0) continue;
    std::vector<int> orb;
    for (const auto& perm : perms) {
      int j = perm[i];
      if (orbit_of[j] < 0) {
        orbit_of[j] = static_cast<int>(orbits.size());
        orb.push_back(j);
      }
    }
    std::sort(orb.begin(), orb.end());
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

Eigen::VectorXcd projector_apply(const CharacterTable& table,
                                 const std::vector<std::vector<int>>& perms, int chi,
                                 const Eigen::VectorXcd& v) {
  const int order = static_cast<int>(perms.size());
  const double scale = static_cast<double>(table.dims[chi]) / order;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (int k = 0; k < order; ++k) {
    Complex c = std::conj(table.value(chi, k)) * scale;
    if (c == Complex(0.0, 0.0)) continue;
    const auto& perm = perms[k];
    for (int i = 0; i < v.size(); ++i) out(i) += c * v(perm[i]);
  }
  return out;
}

namespace {

int fixed_count(const std::vector<int>& perm, const std::vector<int>& orbit) {
  int f = 0;
  for (int i : orbit)
    if (perm[i] == i) ++f;
  return f;
}

int orbit_isotypic_dimension(const CharacterTable& table,
                             const std::vector<std::vector<int>>& perms, int chi,
                             const std::vector<int>& orbit) {
  const int order = static_cast<int>(perms.size());
  Complex acc(0.0, 0.0);
  for (int k = 0; k < order; ++k)
    acc += std::conj(table.value(chi, k)) * static_cast<double>(fixed_count(perms[k], orbit));
  double dim = acc.real() * table.dims[chi] / order;
  int rounded = static_cast<int>(std::lround(dim));
  if (std::abs(dim - rounded) > 1e-6 || std::abs(acc.imag()) > 1e-6)
    throw RankMismatch("trace-formula dimension is not an integer");
  return rounded;
}

}  // namespace

int isotypic_dimension(const CharacterTable& table, const std::vector<std::vector<int>>& perms,
                       int chi) {
  const int n = static_cast<int>(perms[0].size());
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return orbit_isotypic_dimension(table, perms, chi, all);
}

IsotypicBasis isotypic_basis(const CharacterTable& table,
                             const std::vector<std::vector<int>>& perms, int chi) {
  const int n = static_cast<int>(perms[0].size());
  const int order = static_cast<int>(perms.size());
  const double scale = static_cast<double>(table.dims[chi]) / order;
  constexpr double null_threshold = 1e-8;

  auto orbits = grid_orbits(perms, n);
  std::vector<Eigen::Triplet<Complex>> trip;
  int col = 0;

  for (const auto& orbit : orbits) {
    const int sz = static_cast<int>(orbit.size());
    std::vector<int> local(n, -1);  // global -> orbit-local index
    for (int a = 0; a < sz; ++a) local[orbit[a]] = a;

    // columns of P_chi restricted to the orbit: (P_chi delta_q)[i] =
    // (d/|G|) sum over k with perm_k[i] = q of conj(chi(k))
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(sz, sz);
    for (int k = 0; k < order; ++k) {
      Complex c = std::conj(table.value(chi, k)) * scale;
      for (int a = 0; a < sz; ++a) {
        int q = perms[k][orbit[a]];
        proj(a, local[q]) += c;
      }
    }

    // two-pass modified Gram-Schmidt with null-vector rejection
    std::vector<Eigen::VectorXcd> kept;
    for (int q = 0; q < sz; ++q) {
      Eigen::VectorXcd v = proj.col(q);
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& u : kept) v -= u.dot(v) * u;
      double norm = v.norm();
      if (norm < null_threshold) continue;
      kept.push_back(v / norm);
    }

    int expected = orbit_isotypic_dimension(table, perms, chi, orbit);
    if (static_cast<int>(kept.size()) != expected)
      throw RankMismatch("orbit basis rank " + std::to_string(kept.size()) +
                         " disagrees with trace formula " + std::to_string(expected));

    for (const auto& u : kept) {
      for (int a = 0; a < sz; ++a)
        if (std::abs(u(a)) > 0.0) trip.emplace_back(orbit[a], col, u(a));
      ++col;
    }
  }

  IsotypicBasis basis;
  basis.chi = chi;
  basis.columns.resize(n, col);
  basis.columns.setFromTriplets(trip.begin(), trip.end());
  basis.columns.makeCompressed();
  return basis;
}

IsotypicBlock project_operator(const SparseSymmetric& L, const IsotypicBasis& basis) {
  SparseComplex Lc = L.cast<Complex>();
  SparseComplex B = SparseComplex(basis.columns.adjoint()) * (Lc * basis.columns);
  IsotypicBlock block;
  block.chi = basis.chi;
  block.matrix = Eigen::MatrixXcd(B);
  return block;
}

SparseComplex project_operator_sparse(const SparseSymmetric& L, const IsotypicBasis& basis) {
  SparseComplex Lc = L.cast<Complex>();
  SparseComplex B = SparseComplex(basis.columns.adjoint()) * (Lc * basis.columns);
  B.prune(1e-14, 1.0);
  B.makeCompressed();
  return B;
}

Eigen::VectorXd eigen_block(const Eigen::MatrixXd& block) {
  const int m = static_cast<int>(block.rows());
  if (m == 0) return Eigen::VectorXd();
#ifdef EQUIWEYL_HAVE_LAPACKE
  Eigen::MatrixXd a = block;
  Eigen::VectorXd w(m);
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', m, a.data(), m, w.data());
  if (info != 0) throw ConvergenceFailure("dsyevd failed with info " + std::to_string(info));
  return w;
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");
  return es.eigenvalues();
#endif
}

Eigen::VectorXd eigen_block(const Eigen::MatrixXcd& block) {
  const int m = static_cast<int>(block.rows());
  if (m == 0) return Eigen::VectorXd();
  if (block.imag().cwiseAbs().maxCoeff() < 1e-14) {
    Eigen::MatrixXd real = block.real();
    return eigen_block(real);
  }
#ifdef EQUIWEYL_HAVE_LAPACKE
  Eigen::MatrixXcd a = block;
  Eigen::VectorXd w(m);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', m,
                            reinterpret_cast<lapack_complex_double*>(a.data()), m, w.data());
  if (info != 0) throw ConvergenceFailure("zheevd failed with info " + std::to_string(info));
  return w;
#else
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("dense eigensolver failed");
  return es.eigenvalues();
#endif
}

namespace {

int inertia_count(const Eigen::SparseMatrix<double>& shifted) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(shifted);
  if (ldlt.info() != Eigen::Success)
    throw ConvergenceFailure("sparse LDL^T factorization failed");
  const auto& d = ldlt.vectorD();
  int neg = 0;
  for (int i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d(i))) throw ConvergenceFailure("non-finite pivot in LDL^T");
    if (d(i) < 0.0) ++neg;
  }
  return neg;
}

int count_below_real(const Eigen::SparseMatrix<double>& B, double lambda) {
  const int m = static_cast<int>(B.rows());
  Eigen::SparseMatrix<double> eye(m, m);
  eye.setIdentity();
  // a tiny relative nudge sidesteps exact-singular shifts; counting semantics
  // are unaffected because test lambdas are kept away from eigenvalues
  for (int attempt = 0; attempt < 4; ++attempt) {
    double shift = lambda * (1.0 + attempt * 1e-9);
    try {
      Eigen::SparseMatrix<double> s = B - shift * eye;
      return inertia_count(s);
    } catch (const ConvergenceFailure&) {
      if (attempt == 3) throw;
    }
  }
  return 0;
}

}  // namespace

int count_below(const SparseSymmetric& block, double lambda) {
  Eigen::SparseMatrix<double> B = block;
  return count_below_real(B, lambda);
}

int count_below(const SparseComplex& block, double lambda) {
  const int m = static_cast<int>(block.rows());
  double max_imag = 0.0;
  for (int o = 0; o < block.outerSize(); ++o)
    for (SparseComplex::InnerIterator it(block, o); it; ++it)
      max_imag = std::max(max_imag, std::abs(it.value().imag()));
  if (max_imag < 1e-12) {
    Eigen::SparseMatrix<double> B = block.real();
    return count_below_real(B, lambda);
  }
  // embed the Hermitian matrix as the real symmetric [Re -Im; Im Re]; each
  // eigenvalue appears twice
  std::vector<Eigen::Triplet<double>> trip;
  for (int o = 0; o < block.outerSize(); ++o)
    for (SparseComplex::InnerIterator it(block, o); it; ++it) {
      int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      double re = it.value().real(), im = it.value().imag();
      if (re != 0.0) {
        trip.emplace_back(i, j, re);
        trip.emplace_back(i + m, j + m, re);
      }
      if (im != 0.0) {
        trip.emplace_back(i, j + m, -im);
        trip.emplace_back(i + m, j, im);
      }
    }
  Eigen::SparseMatrix<double> B(2 * m, 2 * m);
  B.setFromTriplets(trip.begin(), trip.end());
  int neg = count_below_real(B, lambda);
  if (neg % 2 != 0) throw ConvergenceFailure("odd inertia in doubled Hermitian embedding");
  return neg / 2;
}

int Spectrum::count(int chi, double lambda) const {
  const auto& ev = eigenvalues[chi];
  return static_cast<int>(std::upper_bound(ev.data(), ev.data() + ev.size(), lambda) - ev.data());
}

int Spectrum::total_count(double lambda) const {
  int total = 0;
  for (int chi = 0; chi < static_cast<int>(eigenvalues.size()); ++chi)
    total += count(chi, lambda);
  return total;
}

Spectrum solve_all_blocks(const SparseSymmetric& L, const CharacterTable& table,
                          const std::vector<std::vector<int>>& perms) {
  Spectrum spec;
  for (int chi = 0; chi < table.num_irreps(); ++chi) {
    IsotypicBasis basis = isotypic_basis(table, perms, chi);
    IsotypicBlock block = project_operator(L, basis);
    spec.eigenvalues.push_back(eigen_block(block.matrix));
  }
  return spec;
}

ProjectionClassification classify_by_projection(const SparseSymmetric& L,
                                                const CharacterTable& table,
                                                const std::vector<std::vector<int>>& perms,
                                                int how_many) {
  const int n = static_cast<int>(L.rows());
  Eigen::MatrixXd dense(L);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("full eigensolve failed");

  how_many = std::min(how_many, n);
  ProjectionClassification out;
  out.eigenvalues = es.eigenvalues().head(how_many);
  out.weights.resize(how_many, table.num_irreps());
  for (int j = 0; j < how_many; ++j) {
    Eigen::VectorXcd v = es.eigenvectors().col(j).cast<Complex>();
    for (int chi = 0; chi < table.num_irreps(); ++chi)
      out.weights(j, chi) = projector_apply(table, perms, chi, v).squaredNorm();
  }
  return out;
}

}  // namespace equiweyl
