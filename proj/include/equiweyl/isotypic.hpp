#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "equiweyl/group.hpp"
#include "equiweyl/operator.hpp"

namespace equiweyl {

using Complex = std::complex<double>;
using SparseComplex = Eigen::SparseMatrix<Complex>;

/// Permutations realizing T(g) for every group element, in element order.
std::vector<std::vector<int>> all_action_permutations(const InteriorIndex& interior,
                                                      const FiniteGroup& group);

/// Grid-point orbits under the group action; each orbit is a sorted index list.
std::vector<std::vector<int>> grid_orbits(const std::vector<std::vector<int>>& perms, int n);

/// P_chi v = (d_chi/|G|) sum_k conj(chi(k)) T(k) v.
Eigen::VectorXcd projector_apply(const CharacterTable& table,
                                 const std::vector<std::vector<int>>& perms, int chi,
                                 const Eigen::VectorXcd& v);

/// Exact dimension of the chi-isotypic component from the trace formula
/// sum_k (d_chi/|G|) conj(chi(k)) fix(k).
int isotypic_dimension(const CharacterTable& table, const std::vector<std::vector<int>>& perms,
                       int chi);

/// Orthonormal basis of the chi-isotypic component, built orbit by orbit.
/// Columns are supported on single orbits, so the matrix is sparse.
struct IsotypicBasis {
  int chi = 0;
  SparseComplex columns;  // N x m, orthonormal

  int size() const { return static_cast<int>(columns.cols()); }
};

IsotypicBasis isotypic_basis(const CharacterTable& table,
                             const std::vector<std::vector<int>>& perms, int chi);

/// Hermitian compression V^H L V of the operator onto an isotypic basis.
struct IsotypicBlock {
  int chi = 0;
  Eigen::MatrixXcd matrix;
};

IsotypicBlock project_operator(const SparseSymmetric& L, const IsotypicBasis& basis);

/// Sparse form of the compression, for counting at large N.
SparseComplex project_operator_sparse(const SparseSymmetric& L, const IsotypicBasis& basis);

/// All eigenvalues of a Hermitian block, ascending.
Eigen::VectorXd eigen_block(const Eigen::MatrixXcd& block);
Eigen::VectorXd eigen_block(const Eigen::MatrixXd& block);

/// Number of eigenvalues of a sparse Hermitian matrix that are <= lambda,
/// by Sylvester inertia of an LDL^T factorization of B - lambda I.
int count_below(const SparseComplex& block, double lambda);
int count_below(const SparseSymmetric& block, double lambda);

/// Per-character sorted eigenvalue lists.
struct Spectrum {
  std::vector<Eigen::VectorXd> eigenvalues;  // one ascending list per irrep

  int count(int chi, double lambda) const;
  int total_count(double lambda) const;
};

Spectrum solve_all_blocks(const SparseSymmetric& L, const CharacterTable& table,
                          const std::vector<std::vector<int>>& perms);

/// Character weights ||P_chi v||^2 of the lowest `how_many` eigenvectors of
/// the full matrix; cross-validation path for the block decomposition.
struct ProjectionClassification {
  Eigen::VectorXd eigenvalues;       // ascending, length how_many
  Eigen::MatrixXd weights;           // how_many x num_irreps, rows sum to 1
};

ProjectionClassification classify_by_projection(const SparseSymmetric& L,
                                                const CharacterTable& table,
                                                const std::vector<std::vector<int>>& perms,
                                                int how_many);

}  // namespace equiweyl
