#include "equiweyl/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "equiweyl/rng.hpp"

namespace equiweyl {

namespace {

/// Sum of squared components in sorted order, so that the value is invariant
/// under signed permutations of the coordinates.
double stable_squared_norm(const Eigen::VectorXd& x) {
  double sq[3] = {0.0, 0.0, 0.0};
  const int n = static_cast<int>(x.size());
  for (int d = 0; d < n; ++d) sq[d] = x(d) * x(d);
  std::sort(sq, sq + n);
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += sq[d];
  return s;
}

}  // namespace

double OperatorSpec::coefficient_value(const Eigen::VectorXd& x) const {
  switch (coefficient) {
    case Coefficient::Constant:
      return 1.0;
    case Coefficient::Quadratic:
      return 1.0 + beta * stable_squared_norm(x);
    case Coefficient::RadialBump:
      return 1.0 + beta * std::exp(-stable_squared_norm(x));
  }
  return 1.0;
}

double PrincipalSymbol::evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const {
  double q = stable_squared_norm(xi);
  switch (spec.kind) {
    case OperatorSpec::Kind::Laplacian:
      return q;
    case OperatorSpec::Kind::Bilaplacian:
      return q * q;
    case OperatorSpec::Kind::DivAGrad:
      return spec.coefficient_value(x) * q;
  }
  return q;
}

double PrincipalSymbol::lower_bound(const DomainSpec& domain, int spatial_samples) const {
  using std::numbers::pi;
  const int n = domain.dim;
  double bhw = domain.bounding_half_width();
  double iota = std::numeric_limits<double>::infinity();

  CounterRng rng(12345);
  int found = 0;
  for (int i = 0; found < spatial_samples && i < 100 * spatial_samples + 100; ++i) {
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x(d) = rng.uniform(i, d, -bhw, bhw);
    if (!domain.contains(x)) continue;
    ++found;
    if (n == 2) {
      for (int a = 0; a < 64; ++a) {
        double th = 2.0 * pi * a / 64.0;
        Eigen::Vector2d eta(std::cos(th), std::sin(th));
        iota = std::min(iota, evaluate(x, eta));
      }
    } else {
      for (int a = 0; a < 64; ++a) {
        Eigen::VectorXd eta(n);
        for (int d = 0; d < n; ++d) eta(d) = rng.uniform(i, 8 + 4 * a + d) - 0.5;
        if (eta.norm() < 1e-6) continue;
        eta.normalize();
        iota = std::min(iota, evaluate(x, eta));
      }
    }
  }
  if (!(iota > 0.0)) throw SymbolNotElliptic("principal symbol is not bounded below on X x S^{n-1}");
  return iota;
}

PrincipalSymbol principal_symbol(const OperatorSpec& spec) {
  PrincipalSymbol s;
  s.spec = spec;
  s.degree = spec.order();
  return s;
}

namespace {

constexpr int kDimensionCap = 1 << 22;

SparseSymmetric assemble_second_order(const OperatorSpec& spec, const InteriorIndex& interior) {
  const int n = interior.dim;
  const int N = interior.size();
  const double inv_h2 = 1.0 / (interior.h * interior.h);
  const bool variable = spec.kind == OperatorSpec::Kind::DivAGrad;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * (2 * n + 1));

  for (int i = 0; i < N; ++i) {
    Eigen::VectorXi p = interior.points.row(i).transpose();
    Eigen::VectorXd xi = interior.coordinate(i);
    if (variable && spec.coefficient_value(xi) <= 0.0)
      throw NonPositiveCoefficient("coefficient is not strictly positive on the grid");

    double edge[6];
    int ne = 0;
    for (int d = 0; d < n; ++d) {
      for (int s = -1; s <= 1; s += 2) {
        double w = 1.0;
        if (variable) {
          Eigen::VectorXd mid = xi;
          mid(d) += 0.5 * s * interior.h;
          w = spec.coefficient_value(mid);
          if (w <= 0.0)
            throw NonPositiveCoefficient("coefficient is not strictly positive at an edge midpoint");
        }
        edge[ne++] = w;
        Eigen::VectorXi q = p;
        q(d) += s;
        int j = interior.find(q);
        if (j >= 0) trip.emplace_back(i, j, -w * inv_h2);
      }
    }
    // canonical summation order keeps the diagonal exactly invariant under
    // grid permutations
    std::sort(edge, edge + ne);
    double diag = 0.0;
    for (int e = 0; e < ne; ++e) diag += edge[e];
    trip.emplace_back(i, i, diag * inv_h2);
  }

  SparseSymmetric L(N, N);
  L.setFromTriplets(trip.begin(), trip.end());
  L.makeCompressed();
  return L;
}

SparseSymmetric sparse_symmetric_square(const SparseSymmetric& L) {
  const int N = static_cast<int>(L.rows());
  std::vector<Eigen::Triplet<double>> trip;

  std::vector<int> mark(N, -1);
  std::vector<int> cols;
  for (int i = 0; i < N; ++i) {
    cols.clear();
    for (SparseSymmetric::InnerIterator it(L, i); it; ++it)
      for (SparseSymmetric::InnerIterator jt(L, static_cast<int>(it.col())); jt; ++jt) {
        int j = static_cast<int>(jt.col());
        if (j >= i && mark[j] != i) {
          mark[j] = i;
          cols.push_back(j);
        }
      }
    for (int j : cols) {
      // entry (i,j) = sum_k L_ik L_kj, accumulated in value-sorted order so
      // the result is exactly permutation-invariant
      double terms[32];
      int nt = 0;
      SparseSymmetric::InnerIterator a(L, i), b(L, j);
      while (a && b) {
        if (a.col() < b.col())
          ++a;
        else if (b.col() < a.col())
          ++b;
        else {
          terms[nt++] = a.value() * b.value();
          ++a;
          ++b;
        }
      }
      if (nt == 0) continue;
      std::sort(terms, terms + nt);
      double v = 0.0;
      for (int t = 0; t < nt; ++t) v += terms[t];
      trip.emplace_back(i, j, v);
      if (j != i) trip.emplace_back(j, i, v);
    }
  }
  SparseSymmetric B(N, N);
  B.setFromTriplets(trip.begin(), trip.end());
  B.makeCompressed();
  return B;
}

}  // namespace

SparseSymmetric assemble(const OperatorSpec& spec, const InteriorIndex& interior) {
  if (interior.size() > kDimensionCap)
    throw DimensionOverflow("grid has " + std::to_string(interior.size()) + " points");

  if (spec.kind == OperatorSpec::Kind::Bilaplacian) {
    OperatorSpec lap = spec;
    lap.kind = OperatorSpec::Kind::Laplacian;
    return sparse_symmetric_square(assemble_second_order(lap, interior));
  }
  return assemble_second_order(spec, interior);
}

double equivariance_check(const SparseSymmetric& L, const std::vector<std::vector<int>>& perms) {
  double max_diff = 0.0;
  for (const auto& perm : perms) {
    for (int i = 0; i < L.outerSize(); ++i)
      for (SparseSymmetric::InnerIterator it(L, i); it; ++it) {
        double mapped = L.coeff(perm[it.row()], perm[static_cast<int>(it.col())]);
        max_diff = std::max(max_diff, std::abs(mapped - it.value()));
      }
  }
  return max_diff;
}

}  // namespace equiweyl
