#pragma once

#include <vector>

#include <Eigen/Dense>

#include "equiweyl/group.hpp"

namespace equiweyl {

/// Exact per-character eigenvalue counts for the continuum Dirichlet
/// Laplacian on the 2D square of side `side`, whose eigenfunctions are
/// products of sines with eigenvalues (pi/side)^2 (j^2 + k^2).  The group
/// acts on mode indices by signed permutation with an explicit parity sign,
/// so the counts come from a finite lattice enumeration.
struct ContinuumSquareCounts {
  std::vector<double> per_chi;  // N_chi(lambda); integer-valued up to rounding
  double total = 0.0;
};

ContinuumSquareCounts continuum_square_counts(const FiniteGroup& group,
                                              const CharacterTable& table, double side,
                                              double lambda);

}  // namespace equiweyl
