#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "equiweyl/domain.hpp"
#include "equiweyl/errors.hpp"

namespace equiweyl {

using SparseSymmetric = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Catalog of G-invariant elliptic operators.
struct OperatorSpec {
  enum class Kind { Laplacian, Bilaplacian, DivAGrad };
  enum class Coefficient { Constant, Quadratic, RadialBump };

  Kind kind = Kind::Laplacian;
  Coefficient coefficient = Coefficient::Constant;
  double beta = 0.0;

  /// Order 2m of the operator.
  int order() const { return kind == Kind::Bilaplacian ? 4 : 2; }
  int m() const { return order() / 2; }

  /// Scalar coefficient a(x); identically 1 except for DivAGrad.
  double coefficient_value(const Eigen::VectorXd& x) const;
};

/// Degree-2m positively homogeneous leading symbol a_{2m}(x, xi).
struct PrincipalSymbol {
  OperatorSpec spec;
  int degree = 2;

  double evaluate(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const;
  /// Minimum of the symbol over X x S^{n-1}, estimated on a point sample;
  /// throws SymbolNotElliptic if not positive.
  double lower_bound(const DomainSpec& domain, int spatial_samples) const;
};

PrincipalSymbol principal_symbol(const OperatorSpec& spec);

/// Finite-difference assembly with Dirichlet truncation: 5/7-point stencil
/// for the Laplacian, edge-midpoint coefficients for div(a grad), and the
/// exact sparse square L*L for the bilaplacian.
SparseSymmetric assemble(const OperatorSpec& spec, const InteriorIndex& interior);

/// Max entrywise |P^T L P - L| over the given group permutations; exact
/// assembly makes this 0.0.
double equivariance_check(const SparseSymmetric& L, const std::vector<std::vector<int>>& perms);

}  // namespace equiweyl
