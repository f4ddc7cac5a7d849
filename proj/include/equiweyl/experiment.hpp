#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equiweyl/domain.hpp"
#include "equiweyl/group.hpp"
#include "equiweyl/operator.hpp"
#include "equiweyl/weyl.hpp"

namespace equiweyl {

/// Flat configuration document; every field is explicit and seeds have no
/// entropy defaults, so a config byte-for-byte determines the outputs.
struct ExperimentConfig {
  std::string group_family = "cyclic";
  int group_k = 1;
  int dimension_n = 2;

  std::string domain_shape = "square";
  double half_width_length = 0.5;
  double radius_length = 1.0;
  double inner_radius_length = 0.0;

  std::string operator_kind = "laplacian";
  std::string coefficient = "constant";
  double coefficient_beta = 0.0;

  double h_length = 0.1;
  double lambda_min = 1.0;
  double lambda_max = 100.0;
  int lambda_points = 6;

  std::uint64_t mc_samples = 100000;
  std::uint64_t seed = 0;
  int angular_nodes = 256;
  double quad_h_length = 0.01;

  double ratio_band_low = 0.85;
  double ratio_band_high = 1.15;
  double min_predicted_count = 20.0;

  bool has_seed = false;

  static ExperimentConfig from_json_file(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  void validate() const;

  FiniteGroup make_group() const;
  DomainSpec make_domain() const;
  OperatorSpec make_operator() const;
  QuadratureParams make_quadrature() const;
  std::vector<double> lambda_schedule() const;
};

struct VerifyRow {
  double lambda = 0.0;
  int chi = 0;
  int n_emp = 0;
  double n_pred = 0.0;
  double ratio = 0.0;
  bool checked = false;  // only rows with n_pred >= min_predicted_count gate
  bool pass = true;
};

struct VerifyReport {
  double gamma = 0.0;
  double exponent = 0.0;
  int grid_size = 0;
  double equivariance_defect = 0.0;
  std::vector<VerifyRow> rows;
  std::vector<double> remainder_slopes;  // per chi; NaN when the fit degenerates
  std::vector<std::string> irrep_names;
  bool consistency_ok = true;  // sum over chi equals total count at every lambda
  bool all_pass = true;

  void write_csv(const std::string& path) const;
  void write_json(const std::string& path, const ExperimentConfig& config) const;
};

VerifyReport run_verify(const ExperimentConfig& config);

struct OracleComparison {
  std::vector<double> lambdas;
  std::vector<double> max_drift;  // per lambda, max over chi of |N_disc - N_cont|
  double worst_relative_drift = 0.0;
};

/// Discrete per-character counts against the exact continuum enumeration;
/// only available for the square Laplacian.
OracleComparison run_compare_oracle(const ExperimentConfig& config);

}  // namespace equiweyl
