#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "equiweyl/errors.hpp"
#include "equiweyl/group.hpp"

namespace equiweyl {

/// Catalog of G-invariant domains with exact indicators and closed-form
/// distance to the boundary.
struct DomainSpec {
  enum class Shape { Square, Disk, Annulus, BoxUnion };

  Shape shape = Shape::Square;
  int dim = 2;
  double half_width = 0.5;         // Square: |x|_inf < half_width
  double radius = 1.0;             // Disk: |x| < radius; Annulus outer radius
  double inner_radius = 0.0;       // Annulus: inner_radius < |x| < radius
  std::vector<Eigen::VectorXd> box_half_widths;  // BoxUnion: origin-centered boxes

  bool contains(const Eigen::VectorXd& x) const;
  /// Euclidean distance to the shape boundary (exact for Square/Disk/Annulus,
  /// a min over box boundaries for BoxUnion).
  double boundary_distance(const Eigen::VectorXd& x) const;
  /// Half-width of the smallest origin-centered cube containing the domain.
  double bounding_half_width() const;

  static DomainSpec square(int dim, double half_width);
  static DomainSpec disk(int dim, double radius);
  static DomainSpec annulus(int dim, double inner, double outer);
  static DomainSpec box_union(std::vector<Eigen::VectorXd> half_widths);
};

/// Cell-centered discretization of a domain: grid point p has physical
/// coordinates (p + 1/2) h componentwise, p integer.  Symmetric index ranges
/// make the grid exactly closed under signed permutations.
class InteriorIndex {
 public:
  double h = 0.0;
  int dim = 0;
  Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> points;  // N x dim multi-indices

  int size() const { return static_cast<int>(points.rows()); }

  Eigen::VectorXd coordinate(int i) const {
    Eigen::VectorXd x(dim);
    for (int d = 0; d < dim; ++d) x(d) = (points(i, d) + 0.5) * h;
    return x;
  }

  /// Dense index of a multi-index, or -1 if not a grid point.
  int find(const Eigen::VectorXi& p) const;

  void build_index();

 private:
  std::unordered_map<std::uint64_t, int> index_of_;
  static std::uint64_t key(const Eigen::VectorXi& p);
};

InteriorIndex discretize(const DomainSpec& domain, double h);

/// Permutation realizing T(g) phi(x) = phi(g^{-1} x) on grid functions:
/// (T(g) v)[i] = v[perm[i]].
std::vector<int> action_permutation(const InteriorIndex& interior, const OrthogonalElement& g);

struct TubeEstimate {
  double rho = 0.0;
  double volume = 0.0;
  double stderr_ = 0.0;
  std::string method = "monte-carlo";
};

/// Monte-Carlo estimate of vol{x : dist(x, boundary) < rho} over the
/// bounding box of the domain.
TubeEstimate boundary_tube_volume(const DomainSpec& domain, double rho,
                                  std::uint64_t samples, std::uint64_t seed);

/// Monte-Carlo estimate of vol{x in X : dist(x, Sigma) < r}, Sigma the union
/// of fixed-point subspaces of the non-identity elements.
TubeEstimate fixed_set_tube_volume(const DomainSpec& domain, const FiniteGroup& group,
                                   double r, std::uint64_t samples, std::uint64_t seed);

}  // namespace equiweyl
