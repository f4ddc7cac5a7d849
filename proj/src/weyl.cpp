#include "equiweyl/weyl.hpp"

#include <cmath>
#include <numbers>

#include "equiweyl/errors.hpp"
#include "equiweyl/rng.hpp"

namespace equiweyl {

using std::numbers::pi;

namespace {

/// Directions and weights for the angular integral over S^{n-1}; weights sum
/// to the sphere measure.
std::vector<std::pair<Eigen::VectorXd, double>> sphere_nodes(int dim, int angular_nodes,
                                                            std::uint64_t sphere_samples,
                                                            std::uint64_t seed) {
  std::vector<std::pair<Eigen::VectorXd, double>> nodes;
  if (dim == 1) {
    Eigen::VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    nodes.emplace_back(plus, 1.0);
    nodes.emplace_back(minus, 1.0);
  } else if (dim == 2) {
    for (int a = 0; a < angular_nodes; ++a) {
      double th = 2.0 * pi * a / angular_nodes;
      Eigen::VectorXd eta(2);
      eta << std::cos(th), std::sin(th);
      nodes.emplace_back(eta, 2.0 * pi / angular_nodes);
    }
  } else {
    CounterRng rng(seed);
    double w = 4.0 * pi / static_cast<double>(sphere_samples);
    for (std::uint64_t i = 0; i < sphere_samples; ++i) {
      // Marsaglia: uniform on S^2 via the unit disk
      double u, v, s;
      std::uint64_t slot = 0;
      do {
        u = rng.uniform(i, slot++, -1.0, 1.0);
        v = rng.uniform(i, slot++, -1.0, 1.0);
        s = u * u + v * v;
      } while (s >= 1.0 || s == 0.0);
      double f = 2.0 * std::sqrt(1.0 - s);
      Eigen::VectorXd eta(3);
      eta << u * f, v * f, 1.0 - 2.0 * s;
      nodes.emplace_back(eta, w);
    }
  }
  return nodes;
}

/// Cell-counting integral over X of a spatial profile obtained by angular
/// quadrature at each cell center.
template <typename Profile>
double spatial_integral(const DomainSpec& domain, double h, const Profile& profile) {
  const int n = domain.dim;
  double bhw = domain.bounding_half_width();
  int pmax = static_cast<int>(std::ceil(bhw / h)) + 1;
  double cell = std::pow(h, n);
  double total = 0.0;

  std::vector<int> idx(n, -pmax);
  Eigen::VectorXd x(n);
  while (true) {
    for (int d = 0; d < n; ++d) x(d) = (idx[d] + 0.5) * h;
    if (domain.contains(x)) total += profile(x);
    int d = 0;
    ++idx[0];
    while (d < n && idx[d] >= pmax) {
      idx[d] = -pmax;
      if (++d < n) ++idx[d];
    }
    if (d == n) break;
  }
  return total * cell;
}

}  // namespace

WeylPrediction weyl_gamma(const DomainSpec& domain, const PrincipalSymbol& symbol,
                          const QuadratureParams& quad) {
  const int n = domain.dim;
  const double power = -static_cast<double>(n) / symbol.degree;
  double iota = symbol.lower_bound(domain, 200);
  (void)iota;  // throws if the symbol is not elliptic

  auto nodes = sphere_nodes(n, quad.angular_nodes, quad.sphere_samples, quad.seed);
  double integral = spatial_integral(domain, quad.spatial_h, [&](const Eigen::VectorXd& x) {
    double acc = 0.0;
    for (const auto& [eta, w] : nodes) acc += w * std::pow(symbol.evaluate(x, eta), power);
    return acc;
  });

  WeylPrediction pred;
  pred.dim = n;
  pred.order = symbol.degree;
  pred.exponent = static_cast<double>(n) / symbol.degree;
  pred.gamma = integral / (n * std::pow(2.0 * pi, n));
  return pred;
}

double predicted_count(const WeylPrediction& pred, int d_chi, int group_order, double lambda) {
  if (lambda <= 0.0) return 0.0;
  double factor = static_cast<double>(d_chi) * d_chi / group_order;
  return factor * pred.gamma * std::pow(lambda, pred.exponent);
}

double SymbolWeights::a_lambda(const PrincipalSymbol& symbol, const Eigen::VectorXd& x,
                               const Eigen::VectorXd& xi, double lambda) {
  double a = symbol.evaluate(x, xi);
  double r2m = std::pow(xi.squaredNorm(), symbol.degree / 2.0);
  return (1.0 - lambda / a) / (1.0 + lambda / r2m);
}

namespace {

/// Smallest cube half-width R such that a_lambda >= threshold outside
/// |xi| = R in every direction, i.e. the RV shell is inside the box.
double rv_bounding_radius(const DomainSpec& domain, const PrincipalSymbol& symbol,
                          const SymbolWeights& weights, double lambda) {
  const int n = domain.dim;
  double iota = symbol.lower_bound(domain, 100);
  double r = 1.5 * std::pow(lambda / iota, 1.0 / symbol.degree);
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
  for (int attempt = 0; attempt < 200; ++attempt) {
    // worst case over directions: smallest symbol value, largest threshold
    double a_min = iota * std::pow(r, symbol.degree);
    double a_l = (1.0 - lambda / a_min) / (1.0 + lambda / std::pow(r, symbol.degree));
    double eps = weights.c * (std::pow(1.0 + r * r, -(weights.delta - weights.omega()) / 2.0) +
                              1.0 / r);
    if (a_l > eps) return r;
    r *= 1.25;
  }
  throw BoundingRadiusTooSmall("could not bound the RV shell by a finite xi-box");
}

struct McPhaseSpace {
  double x_half = 0.0;
  double xi_half = 0.0;
  double box_volume = 0.0;
};

template <typename Predicate>
VolumeEstimate mc_phase_volume(const DomainSpec& domain, double xi_half, std::uint64_t samples,
                               std::uint64_t seed, const Predicate& pred) {
  const int n = domain.dim;
  const double x_half = domain.bounding_half_width();
  const double box_vol = std::pow(2.0 * x_half, n) * std::pow(2.0 * xi_half, n);

  CounterRng rng(seed);
  std::uint64_t hits = 0;
  Eigen::VectorXd x(n), xi(n);
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int d = 0; d < n; ++d) {
      x(d) = rng.uniform(i, d, -x_half, x_half);
      xi(d) = rng.uniform(i, n + d, -xi_half, xi_half);
    }
    if (domain.contains(x) && pred(x, xi)) ++hits;
  }
  double p = samples ? static_cast<double>(hits) / samples : 0.0;
  VolumeEstimate est;
  est.value = box_vol * p;
  est.stderr_ = samples ? box_vol * std::sqrt(p * (1.0 - p) / samples) : 0.0;
  est.samples = samples;
  est.seed = seed;
  est.method = "monte-carlo";
  return est;
}

}  // namespace

VolumeEstimate vol_W_lambda(const DomainSpec& domain, const PrincipalSymbol& symbol,
                            double lambda, VolumeMode mode, std::uint64_t samples,
                            std::uint64_t seed, const QuadratureParams& quad) {
  if (lambda < 1.0) throw Error("vol_W_lambda expects lambda >= 1");
  const int n = domain.dim;

  if (mode == VolumeMode::ClosedRadial) {
    // W_lambda is star-shaped in xi: a_lambda < 0 iff |xi| < (lambda /
    // a_{2m}(x, eta))^{1/2m}, so the xi-integral reduces to the radial moment
    auto radial = [&](int angular_nodes) {
      auto nodes = sphere_nodes(n, angular_nodes, quad.sphere_samples, quad.seed);
      return spatial_integral(domain, quad.spatial_h, [&](const Eigen::VectorXd& x) {
        double acc = 0.0;
        for (const auto& [eta, w] : nodes) {
          double radius = std::pow(lambda / symbol.evaluate(x, eta), 1.0 / symbol.degree);
          acc += w * std::pow(radius, n) / n;
        }
        return acc;
      });
    };
    double fine = radial(quad.angular_nodes);
    double coarse = radial(std::max(2, quad.angular_nodes / 2));
    VolumeEstimate est;
    est.value = fine;
    est.stderr_ = std::abs(fine - coarse);
    est.samples = 0;
    est.seed = quad.seed;
    est.method = "closed-radial";
    return est;
  }

  double iota = symbol.lower_bound(domain, 100);
  double xi_half = 1.05 * std::pow(lambda / iota, 1.0 / symbol.degree);
  if (std::pow(xi_half, symbol.degree) * iota <= lambda)
    throw BoundingRadiusTooSmall("xi-box does not contain W_lambda");
  return mc_phase_volume(domain, xi_half, samples, seed,
                         [&](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
                           return SymbolWeights::a_lambda(symbol, x, xi, lambda) < 0.0;
                         });
}

VolumeEstimate vol_RV(const DomainSpec& domain, const PrincipalSymbol& symbol,
                      const SymbolWeights& weights, double lambda, std::uint64_t samples,
                      std::uint64_t seed) {
  if (lambda < 1.0) throw Error("vol_RV expects lambda >= 1");
  if (weights.delta <= 0.25 || weights.delta >= 0.5)
    throw Error("delta must lie in (1/4, 1/2)");
  if (weights.c <= 0.0) throw Error("c must be positive");

  double xi_half = rv_bounding_radius(domain, symbol, weights, lambda);
  return mc_phase_volume(
      domain, xi_half, samples, seed, [&](const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
        if (xi.squaredNorm() == 0.0) return true;
        double a_l = SymbolWeights::a_lambda(symbol, x, xi, lambda);
        double eps = weights.threshold(x, xi);
        if (std::abs(a_l) < eps) return true;
        return a_l < eps && weights.near_boundary(domain, x, xi);
      });
}

PowerLawFit remainder_fit(const std::vector<double>& lambdas,
                          const std::vector<double>& deviations) {
  if (lambdas.size() != deviations.size()) throw Error("mismatched fit inputs");

  std::vector<double> lx, ly;
  int dropped = 0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (deviations[i] > 0.0 && lambdas[i] > 0.0) {
      lx.push_back(std::log(lambdas[i]));
      ly.push_back(std::log(deviations[i]));
    } else {
      ++dropped;
    }
  }
  const int k = static_cast<int>(lx.size());
  if (k < 3) throw DegenerateFit("fewer than 3 usable points for the power-law fit");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < k; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  double denom = k * sxx - sx * sx;
  if (std::abs(denom) < 1e-14) throw DegenerateFit("degenerate abscissae");

  PowerLawFit fit;
  fit.slope = (k * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / k;
  double ss = 0.0;
  for (int i = 0; i < k; ++i) {
    double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / k);
  fit.used_points = k;
  fit.dropped_points = dropped;
  return fit;
}

}  // namespace equiweyl
