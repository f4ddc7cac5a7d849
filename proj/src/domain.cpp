#include "equiweyl/domain.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "equiweyl/rng.hpp"

namespace equiweyl {

bool DomainSpec::contains(const Eigen::VectorXd& x) const {
  switch (shape) {
    case Shape::Square:
      return x.lpNorm<Eigen::Infinity>() < half_width;
    case Shape::Disk:
      return x.norm() < radius;
    case Shape::Annulus: {
      double r = x.norm();
      return r > inner_radius && r < radius;
    }
    case Shape::BoxUnion:
      for (const auto& hw : box_half_widths) {
        bool inside = true;
        for (int d = 0; d < dim; ++d)
          if (std::abs(x(d)) >= hw(d)) {
            inside = false;
            break;
          }
        if (inside) return true;
      }
      return false;
  }
  return false;
}

namespace {

double box_boundary_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& hw) {
  // signed-distance construction for an axis-aligned box
  Eigen::VectorXd q = x.cwiseAbs() - hw;
  double outside = q.cwiseMax(0.0).norm();
  double inside = -q.maxCoeff();  // positive when strictly inside
  return outside > 0.0 ? outside : inside;
}

}  // namespace

double DomainSpec::boundary_distance(const Eigen::VectorXd& x) const {
  switch (shape) {
    case Shape::Square: {
      Eigen::VectorXd hw = Eigen::VectorXd::Constant(dim, half_width);
      return box_boundary_distance(x, hw);
    }
    case Shape::Disk:
      return std::abs(radius - x.norm());
    case Shape::Annulus: {
      double r = x.norm();
      return std::min(std::abs(r - inner_radius), std::abs(r - radius));
    }
    case Shape::BoxUnion: {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& hw : box_half_widths) d = std::min(d, box_boundary_distance(x, hw));
      return d;
    }
  }
  return 0.0;
}

double DomainSpec::bounding_half_width() const {
  switch (shape) {
    case Shape::Square:
      return half_width;
    case Shape::Disk:
    case Shape::Annulus:
      return radius;
    case Shape::BoxUnion: {
      double w = 0.0;
      for (const auto& hw : box_half_widths) w = std::max(w, hw.maxCoeff());
      return w;
    }
  }
  return 0.0;
}

DomainSpec DomainSpec::square(int dim, double half_width) {
  DomainSpec d;
  d.shape = Shape::Square;
  d.dim = dim;
  d.half_width = half_width;
  return d;
}

DomainSpec DomainSpec::disk(int dim, double radius) {
  DomainSpec d;
  d.shape = Shape::Disk;
  d.dim = dim;
  d.radius = radius;
  return d;
}

DomainSpec DomainSpec::annulus(int dim, double inner, double outer) {
  DomainSpec d;
  d.shape = Shape::Annulus;
  d.dim = dim;
  d.inner_radius = inner;
  d.radius = outer;
  return d;
}

DomainSpec DomainSpec::box_union(std::vector<Eigen::VectorXd> half_widths) {
  DomainSpec d;
  d.shape = Shape::BoxUnion;
  d.dim = half_widths.empty() ? 2 : static_cast<int>(half_widths[0].size());
  d.box_half_widths = std::move(half_widths);
  return d;
}

std::uint64_t InteriorIndex::key(const Eigen::VectorXi& p) {
  // multi-indices fit comfortably in 21 bits per axis at desk scale
  std::uint64_t k = 0;
  for (int d = 0; d < p.size(); ++d)
    k = (k << 21) | (static_cast<std::uint64_t>(p(d) + (1 << 20)) & 0x1fffff);
  return k;
}

int InteriorIndex::find(const Eigen::VectorXi& p) const {
  auto it = index_of_.find(key(p));
  return it == index_of_.end() ? -1 : it->second;
}

void InteriorIndex::build_index() {
  index_of_.clear();
  index_of_.reserve(points.rows());
  for (int i = 0; i < points.rows(); ++i) {
    Eigen::VectorXi p = points.row(i).transpose();
    index_of_[key(p)] = i;
  }
}

InteriorIndex discretize(const DomainSpec& domain, double h) {
  if (h <= 0.0) throw Error("grid spacing must be positive");
  InteriorIndex grid;
  grid.h = h;
  grid.dim = domain.dim;

  const int pmax = static_cast<int>(std::ceil(domain.bounding_half_width() / h)) + 1;
  std::vector<Eigen::VectorXi> pts;
  Eigen::VectorXi p(domain.dim);
  Eigen::VectorXd x(domain.dim);

  // lexicographic scan over the symmetric index box [-pmax, pmax)
  std::vector<int> idx(domain.dim, -pmax);
  while (true) {
    for (int i = 0; i < domain.dim; ++i) {
      p(i) = idx[i];
      x(i) = (p(i) + 0.5) * h;
    }
    if (domain.contains(x)) pts.push_back(p);
    int d = 0;
    ++idx[0];
    while (d < domain.dim && idx[d] >= pmax) {
      idx[d] = -pmax;
      if (++d < domain.dim) ++idx[d];
    }
    if (d == domain.dim) break;
  }

  if (pts.empty()) throw EmptyDiscretization("no cell centers inside the domain at h = " +
                                             std::to_string(h));
  grid.points.resize(static_cast<int>(pts.size()), domain.dim);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) grid.points.row(i) = pts[i].transpose();
  grid.build_index();
  return grid;
}

std::vector<int> action_permutation(const InteriorIndex& interior, const OrthogonalElement& g) {
  // cell centers (p + 1/2) h transform under a signed permutation M as
  // p' = M p + (M 1 - 1)/2, exactly in integer arithmetic
  const int n = interior.dim;
  Eigen::MatrixXi m_inv = g.matrix.transpose();  // inverse of an orthogonal integer matrix
  Eigen::VectorXi ones = Eigen::VectorXi::Ones(n);
  Eigen::VectorXi shift = m_inv * ones - ones;  // componentwise even
  for (int d = 0; d < n; ++d)
    if (shift(d) % 2 != 0) throw GridNotClosed("element is not a signed permutation");

  std::vector<int> perm(interior.size());
  for (int i = 0; i < interior.size(); ++i) {
    Eigen::VectorXi p = interior.points.row(i).transpose();
    Eigen::VectorXi q = m_inv * p + shift / 2;
    int j = interior.find(q);
    if (j < 0) throw GridNotClosed("group image of a grid point left the grid");
    perm[i] = j;
  }
  return perm;
}

namespace {

TubeEstimate mc_fraction(const DomainSpec& domain, double rho, std::uint64_t samples,
                         std::uint64_t seed, double box_half_width,
                         const std::function<bool(const Eigen::VectorXd&)>& inside) {
  CounterRng rng(seed);
  const int n = domain.dim;
  const double box_vol = std::pow(2.0 * box_half_width, n);
  std::uint64_t hits = 0;
  Eigen::VectorXd x(n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int d = 0; d < n; ++d)
      x(d) = rng.uniform(i, d, -box_half_width, box_half_width);
    if (inside(x)) ++hits;
  }
  double p = samples ? static_cast<double>(hits) / samples : 0.0;
  TubeEstimate est;
  est.rho = rho;
  est.volume = box_vol * p;
  est.stderr_ = samples ? box_vol * std::sqrt(p * (1.0 - p) / samples) : 0.0;
  return est;
}

}  // namespace

TubeEstimate boundary_tube_volume(const DomainSpec& domain, double rho,
                                  std::uint64_t samples, std::uint64_t seed) {
  if (rho <= 0.0) {
    TubeEstimate zero;
    zero.rho = rho;
    return zero;
  }
  double bhw = domain.bounding_half_width() + rho;
  return mc_fraction(domain, rho, samples, seed, bhw,
                     [&](const Eigen::VectorXd& x) { return domain.boundary_distance(x) < rho; });
}

TubeEstimate fixed_set_tube_volume(const DomainSpec& domain, const FiniteGroup& group,
                                   double r, std::uint64_t samples, std::uint64_t seed) {
  if (group.size() <= 1) throw TrivialGroup("fixed-point set is empty for the trivial group");
  if (r <= 0.0) throw Error("tube radius must be positive");

  std::vector<FixedPointData> fps;
  for (int g = 1; g < group.size(); ++g) fps.push_back(fixed_point_data(group, g));

  double bhw = domain.bounding_half_width();
  return mc_fraction(domain, r, samples, seed, bhw, [&](const Eigen::VectorXd& x) {
    if (!domain.contains(x)) return false;
    for (const auto& fp : fps)
      if (distance_to_fixed_subspace(fp, x) < r) return true;
    return false;
  });
}

}  // namespace equiweyl
