#include "equiweyl/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace equiweyl {

int OrthogonalElement::det() const {
  // expansion is exact for signed permutations; n <= 3 here
  const int n = dim();
  if (n == 1) return matrix(0, 0);
  if (n == 2) return matrix(0, 0) * matrix(1, 1) - matrix(0, 1) * matrix(1, 0);
  int d = 0;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXi minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = matrix(r, c);
    OrthogonalElement sub{minor};
    int s = (j % 2 == 0) ? 1 : -1;
    d += s * matrix(0, j) * sub.det();
  }
  return d;
}

bool OrthogonalElement::is_signed_permutation() const {
  const int n = dim();
  if (matrix.cols() != n) return false;
  for (int i = 0; i < n; ++i) {
    int row_nz = 0, col_nz = 0;
    for (int j = 0; j < n; ++j) {
      int r = matrix(i, j), c = matrix(j, i);
      if (r != 0) {
        if (r != 1 && r != -1) return false;
        ++row_nz;
      }
      if (c != 0) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  return true;
}

GroupFamily parse_family(const std::string& name) {
  if (name == "cyclic") return GroupFamily::Cyclic;
  if (name == "dihedral") return GroupFamily::Dihedral;
  if (name == "product") return GroupFamily::Product;
  throw UnsupportedGroup("unknown group family: " + name);
}

namespace {

Eigen::MatrixXi identity_matrix(int n) { return Eigen::MatrixXi::Identity(n, n); }

Eigen::MatrixXi rot90() {
  Eigen::MatrixXi m(2, 2);
  m << 0, -1, 1, 0;
  return m;
}

Eigen::MatrixXi diag2(int a, int b) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Eigen::MatrixXi antidiag2(int a, int b) {
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(2, 2);
  m(0, 1) = a;
  m(1, 0) = b;
  return m;
}

std::vector<OrthogonalElement> family_elements(GroupFamily family, int k, int n) {
  std::vector<OrthogonalElement> e;
  switch (family) {
    case GroupFamily::Cyclic:
      if (k == 1) {
        e.push_back({identity_matrix(n)});
      } else if (k == 2) {
        e.push_back({identity_matrix(n)});
        e.push_back({-identity_matrix(n)});
      } else if (k == 4 && n == 2) {
        Eigen::MatrixXi r = rot90(), p = identity_matrix(2);
        for (int l = 0; l < 4; ++l) {
          e.push_back({p});
          p = r * p;
        }
      } else {
        throw UnsupportedGroup("cyclic group C" + std::to_string(k) +
                               " is not realizable by signed permutations in dimension " +
                               std::to_string(n));
      }
      break;
    case GroupFamily::Dihedral:
      if (n != 2)
        throw UnsupportedGroup("dihedral family is only supported in dimension 2");
      if (k == 1) {
        e.push_back({identity_matrix(2)});
        e.push_back({diag2(1, -1)});
      } else if (k == 2) {
        e.push_back({identity_matrix(2)});
        e.push_back({-identity_matrix(2)});
        e.push_back({diag2(1, -1)});
        e.push_back({diag2(-1, 1)});
      } else if (k == 4) {
        Eigen::MatrixXi r = rot90(), p = identity_matrix(2);
        for (int l = 0; l < 4; ++l) {
          e.push_back({p});
          p = r * p;
        }
        e.push_back({diag2(1, -1)});
        e.push_back({diag2(-1, 1)});
        e.push_back({antidiag2(1, 1)});
        e.push_back({antidiag2(-1, -1)});
      } else {
        throw UnsupportedGroup("dihedral order parameter must be 1, 2, or 4");
      }
      break;
    case GroupFamily::Product: {
      if (k < 0 || k > n)
        throw UnsupportedGroup("product family needs 0 <= k <= n sign-flipped axes");
      for (int b = 0; b < (1 << k); ++b) {
        Eigen::MatrixXi m = identity_matrix(n);
        for (int i = 0; i < k; ++i)
          if (b & (1 << i)) m(i, i) = -1;
        e.push_back({m});
      }
      break;
    }
  }
  return e;
}

}  // namespace

FiniteGroup build_group(GroupFamily family, int k, int n) {
  if (n < 1 || n > 3) throw UnsupportedGroup("spatial dimension must be 1, 2, or 3");
  FiniteGroup g;
  g.family = family;
  g.k = k;
  g.elements = family_elements(family, k, n);

  const int m = g.size();
  g.mul_table.resize(m, m);
  g.inverse.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Eigen::MatrixXi prod = g.elements[i].matrix * g.elements[j].matrix;
      int idx = -1;
      for (int l = 0; l < m; ++l)
        if (g.elements[l].matrix == prod) {
          idx = l;
          break;
        }
      if (idx < 0) throw UnsupportedGroup("element set is not closed under multiplication");
      g.mul_table(i, j) = idx;
      if (idx == 0) g.inverse[i] = j;
    }
  }
  for (int i = 0; i < m; ++i)
    if (g.inverse[i] < 0) throw UnsupportedGroup("element without inverse");
  return g;
}

bool CharacterTable::is_real() const {
  return values.imag().cwiseAbs().maxCoeff() < 1e-14;
}

namespace {

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g, std::vector<int>& class_of) {
  const int m = g.size();
  class_of.assign(m, -1);
  std::vector<std::vector<int>> classes;
  for (int i = 0; i < m; ++i) {
    if (class_of[i] >= 0) continue;
    std::vector<int> cls;
    for (int h = 0; h < m; ++h) {
      int c = g.multiply(g.multiply(h, i), g.inverse[h]);
      if (class_of[c] < 0) {
        class_of[c] = static_cast<int>(classes.size());
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(cls);
  }
  return classes;
}

// Character value per element, in closed form per family.
std::complex<double> character_value(const FiniteGroup& g, int irrep, int element) {
  using std::numbers::pi;
  const std::complex<double> i_unit(0.0, 1.0);
  switch (g.family) {
    case GroupFamily::Cyclic: {
      // elements are listed as successive generator powers
      double phase = 2.0 * pi * irrep * element / g.k;
      if (g.k <= 2) return {std::cos(phase), 0.0};
      return std::exp(i_unit * phase);
    }
    case GroupFamily::Product: {
      int sign = 1;
      for (int b = 0; b < g.k; ++b)
        if ((element & (1 << b)) && (irrep & (1 << b))) sign = -sign;
      return {static_cast<double>(sign), 0.0};
    }
    case GroupFamily::Dihedral: {
      if (g.k == 1) {
        // {e, sigma}
        return {element == 1 && irrep == 1 ? -1.0 : 1.0, 0.0};
      }
      if (g.k == 2) {
        // Klein four group {e, -I, sigma_x, sigma_y}; irrep bits pick the
        // signs of -I and sigma_x
        int s_rot = (irrep & 1) ? -1 : 1;
        int s_ref = (irrep & 2) ? -1 : 1;
        double v[4] = {1.0, double(s_rot), double(s_ref), double(s_rot * s_ref)};
        return {v[element], 0.0};
      }
      // D4: elements 0..3 rotations R^l, 4..5 axis reflections, 6..7 diagonal
      int l = element;
      bool rot = element < 4;
      bool axis = element == 4 || element == 5;
      switch (irrep) {
        case 0: return {1.0, 0.0};                                       // A1
        case 1: return {rot ? 1.0 : -1.0, 0.0};                          // A2
        case 2: return {rot ? (l % 2 ? -1.0 : 1.0) : (axis ? 1.0 : -1.0), 0.0};  // B1
        case 3: return {rot ? (l % 2 ? -1.0 : 1.0) : (axis ? -1.0 : 1.0), 0.0};  // B2
        case 4: return {rot ? 2.0 * std::cos(pi * l / 2.0) : 0.0, 0.0};  // E
      }
      break;
    }
  }
  throw UnsupportedGroup("no closed-form character table for this family");
}

std::vector<std::string> irrep_names(const FiniteGroup& g, int count) {
  std::vector<std::string> names;
  if (g.family == GroupFamily::Dihedral && g.k == 4) {
    names = {"A1", "A2", "B1", "B2", "E"};
  } else {
    for (int j = 0; j < count; ++j) names.push_back("chi" + std::to_string(j));
  }
  return names;
}

}  // namespace

CharacterTable character_table(const FiniteGroup& group) {
  CharacterTable t;
  t.classes = conjugacy_classes(group, t.class_of);
  const int nc = static_cast<int>(t.classes.size());

  int nirrep = nc;  // number of irreps equals number of classes
  t.values.resize(nirrep, nc);
  for (int irrep = 0; irrep < nirrep; ++irrep) {
    for (int c = 0; c < nc; ++c) {
      std::complex<double> v = character_value(group, irrep, t.classes[c][0]);
      for (int e : t.classes[c]) {
        std::complex<double> w = character_value(group, irrep, e);
        if (std::abs(w - v) > 1e-12)
          throw UnsupportedGroup("character not constant on a conjugacy class");
      }
      // snap rational values picked up through cos/exp
      if (std::abs(v.real() - std::round(v.real())) < 1e-12) v.real(std::round(v.real()));
      if (std::abs(v.imag() - std::round(v.imag())) < 1e-12) v.imag(std::round(v.imag()));
      t.values(irrep, c) = v;
    }
  }
  t.dims.resize(nirrep);
  int sum_sq = 0;
  for (int irrep = 0; irrep < nirrep; ++irrep) {
    double d = t.values(irrep, t.class_of[0]).real();
    t.dims[irrep] = static_cast<int>(std::lround(d));
    sum_sq += t.dims[irrep] * t.dims[irrep];
  }
  if (sum_sq != group.size())
    throw UnsupportedGroup("sum of squared dimensions does not match group order");
  t.irrep_names = irrep_names(group, nirrep);
  return t;
}

FixedPointData fixed_point_data(const FiniteGroup& group, int g) {
  if (g < 0 || g >= group.size()) throw Error("element index out of range");
  if (group.elements[g].is_identity())
    throw IdentityElement("fixed_point_data: kappa is undefined for the identity");

  const int n = group.dim();
  Eigen::MatrixXd diff = group.elements[g].matrix.cast<double>() - Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diff, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();

  constexpr double tol = 1e-12;
  int rank = 0;
  double kappa = std::numeric_limits<double>::infinity();
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol) {
      ++rank;
      kappa = std::min(kappa, sv(i));
    }
  }
  FixedPointData data;
  data.element = g;
  data.kappa = kappa;
  data.fixed_subspace = svd.matrixV().rightCols(n - rank);
  return data;
}

double distance_to_fixed_subspace(const FixedPointData& data, const Eigen::VectorXd& x) {
  if (data.fixed_subspace.cols() == 0) return x.norm();
  Eigen::VectorXd proj = data.fixed_subspace * (data.fixed_subspace.transpose() * x);
  return (x - proj).norm();
}

}  // namespace equiweyl
