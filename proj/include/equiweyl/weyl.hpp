#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "equiweyl/domain.hpp"
#include "equiweyl/group.hpp"
#include "equiweyl/operator.hpp"

namespace equiweyl {

/// Leading-term data of the counting asymptotics: N_chi(lambda) ~
/// (d_chi^2/|G|) gamma lambda^{n/2m}.
struct WeylPrediction {
  double gamma = 0.0;
  double exponent = 0.0;  // n / 2m
  int dim = 0;
  int order = 2;
};

struct QuadratureParams {
  double spatial_h = 0.01;      // cell-counting spacing for the x integral
  int angular_nodes = 256;      // trapezoid nodes on S^1
  std::uint64_t sphere_samples = 100000;  // MC nodes on S^2
  std::uint64_t seed = 1;
};

/// gamma = 1/(n (2 pi)^n) int_X int_{S^{n-1}} a_{2m}(x,xi)^{-n/2m} dx dxi.
WeylPrediction weyl_gamma(const DomainSpec& domain, const PrincipalSymbol& symbol,
                          const QuadratureParams& quad);

double predicted_count(const WeylPrediction& pred, int d_chi, int group_order, double lambda);

/// Auxiliary phase-space weights of the remainder analysis.
struct SymbolWeights {
  double delta = 0.4;   // in (1/4, 1/2)
  double c = 8.0;
  double C0 = 1.0;

  double omega() const { return 0.5 - delta; }

  static double h_weight(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) {
    return 1.0 / std::sqrt(1.0 + x.squaredNorm() + xi.squaredNorm());
  }
  static double d_weight(const Eigen::VectorXd& xi) { return 1.0 / xi.norm(); }

  /// a_lambda = (1 + lambda |xi|^{-2m})^{-1} (1 - lambda / a_{2m}(x, xi)).
  static double a_lambda(const PrincipalSymbol& symbol, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& xi, double lambda);

  /// Shell threshold c (h^{delta-omega} + d).
  double threshold(const Eigen::VectorXd& x, const Eigen::VectorXd& xi) const {
    return c * (std::pow(h_weight(x, xi), delta - omega()) + d_weight(xi));
  }

  /// Boundary proximity predicate of the set D_c:
  /// dist(x, boundary) < sqrt(c) (1 + |x|^2 + |xi|^2)^{-delta/2}.
  bool near_boundary(const DomainSpec& domain, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& xi) const {
    double w = std::sqrt(c) * std::pow(1.0 + x.squaredNorm() + xi.squaredNorm(), -delta / 2.0);
    return domain.boundary_distance(x) < w;
  }
};

struct VolumeEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string method;
};

enum class VolumeMode { ClosedRadial, MonteCarlo };

/// vol W_lambda = vol{(x,xi) in X x R^n : a_lambda < 0}.  Closed-radial mode
/// integrates the radial profile (lambda/a_{2m}(x,eta))^{n/2m}/n over
/// directions; Monte-Carlo mode samples the predicate directly.
VolumeEstimate vol_W_lambda(const DomainSpec& domain, const PrincipalSymbol& symbol,
                            double lambda, VolumeMode mode, std::uint64_t samples,
                            std::uint64_t seed, const QuadratureParams& quad);

/// vol RV_{c,lambda}: the |a_lambda| shell plus the near-boundary part.
VolumeEstimate vol_RV(const DomainSpec& domain, const PrincipalSymbol& symbol,
                      const SymbolWeights& weights, double lambda, std::uint64_t samples,
                      std::uint64_t seed);

/// Least-squares line through (log lambda, log deviation).
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual in log space
  int used_points = 0;
  int dropped_points = 0;
};

PowerLawFit remainder_fit(const std::vector<double>& lambdas,
                          const std::vector<double>& deviations);

}  // namespace equiweyl
