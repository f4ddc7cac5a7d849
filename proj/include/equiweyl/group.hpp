#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equiweyl/errors.hpp"

namespace equiweyl {

/// A signed permutation matrix in O(n), stored with exact integer entries.
/// Signed permutations map any origin-symmetric cell-centered grid to
/// itself, which keeps the regular representation on grid functions exact.
struct OrthogonalElement {
  Eigen::MatrixXi matrix;  // entries in {-1, 0, +1}

  int dim() const { return static_cast<int>(matrix.rows()); }
  bool is_identity() const { return matrix.isIdentity(); }
  int det() const;
  bool is_signed_permutation() const;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    return matrix.cast<double>() * x;
  }
  Eigen::VectorXi apply(const Eigen::VectorXi& p) const { return matrix * p; }

  bool operator==(const OrthogonalElement& o) const { return matrix == o.matrix; }
};

enum class GroupFamily { Cyclic, Dihedral, Product };

GroupFamily parse_family(const std::string& name);

/// Finite subgroup of O(n) with exact multiplication table.
/// Element 0 is the identity.
struct FiniteGroup {
  GroupFamily family = GroupFamily::Cyclic;
  int k = 1;
  std::vector<OrthogonalElement> elements;
  Eigen::MatrixXi mul_table;   // mul_table(i,j) = index of elements[i]*elements[j]
  std::vector<int> inverse;

  int size() const { return static_cast<int>(elements.size()); }
  int dim() const { return elements.empty() ? 0 : elements[0].dim(); }
  int multiply(int i, int j) const { return mul_table(i, j); }
};

FiniteGroup build_group(GroupFamily family, int k, int n);

/// Irreducible characters of a supported group, one complex value per
/// conjugacy class.
struct CharacterTable {
  std::vector<std::vector<int>> classes;  // element indices, class 0 = {e}
  std::vector<int> class_of;              // element index -> class index
  Eigen::MatrixXcd values;                // irreps x classes
  std::vector<int> dims;                  // d_chi = chi(e)
  std::vector<std::string> irrep_names;

  int num_irreps() const { return static_cast<int>(values.rows()); }
  int num_classes() const { return static_cast<int>(values.cols()); }
  std::complex<double> value(int chi, int element) const {
    return values(chi, class_of[element]);
  }
  bool is_real() const;
};

CharacterTable character_table(const FiniteGroup& group);

/// Fixed-point subspace of a non-identity element and the linear separation
/// constant kappa with |gx - x| >= kappa * dist(x, Sigma_g).
struct FixedPointData {
  int element = -1;
  Eigen::MatrixXd fixed_subspace;  // orthonormal columns spanning ker(g - I)
  double kappa = 0.0;
};

FixedPointData fixed_point_data(const FiniteGroup& group, int g);

/// Euclidean distance from x to the fixed subspace of `data`.
double distance_to_fixed_subspace(const FixedPointData& data, const Eigen::VectorXd& x);

}  // namespace equiweyl
