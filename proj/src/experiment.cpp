#include "equiweyl/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "equiweyl/isotypic.hpp"
#include "equiweyl/oracle.hpp"

namespace equiweyl {

using nlohmann::json;

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  ExperimentConfig c;
  auto get = [&](const char* key, auto& field, bool required = false) {
    if (j.contains(key)) {
      try {
        field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
      } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
      }
    } else if (required) {
      throw ConfigError(std::string("missing required config key '") + key + "'");
    }
  };

  get("group_family", c.group_family);
  get("group_k", c.group_k);
  get("dimension_n", c.dimension_n);
  get("domain_shape", c.domain_shape);
  get("half_width_length", c.half_width_length);
  get("radius_length", c.radius_length);
  get("inner_radius_length", c.inner_radius_length);
  get("operator_kind", c.operator_kind);
  get("coefficient", c.coefficient);
  get("coefficient_beta", c.coefficient_beta);
  get("h_length", c.h_length);
  get("lambda_min", c.lambda_min);
  get("lambda_max", c.lambda_max);
  get("lambda_points", c.lambda_points);
  get("mc_samples", c.mc_samples);
  get("angular_nodes", c.angular_nodes);
  get("quad_h_length", c.quad_h_length);
  get("ratio_band_low", c.ratio_band_low);
  get("ratio_band_high", c.ratio_band_high);
  get("min_predicted_count", c.min_predicted_count);
  get("seed", c.seed, true);
  c.has_seed = true;
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (!has_seed) throw ConfigError("seed is required; there is no entropy default");
  if (h_length <= 0.0) throw ConfigError("h_length must be positive");
  if (lambda_min < 1.0) throw ConfigError("lambda_min must be >= 1");
  if (lambda_max < lambda_min) throw ConfigError("lambda_max must be >= lambda_min");
  if (lambda_points < 2) throw ConfigError("lambda schedule needs at least 2 points");
  if (dimension_n < 1 || dimension_n > 3) throw ConfigError("dimension_n must be 1, 2, or 3");
}

FiniteGroup ExperimentConfig::make_group() const {
  return build_group(parse_family(group_family), group_k, dimension_n);
}

DomainSpec ExperimentConfig::make_domain() const {
  if (domain_shape == "square") return DomainSpec::square(dimension_n, half_width_length);
  if (domain_shape == "disk") return DomainSpec::disk(dimension_n, radius_length);
  if (domain_shape == "annulus")
    return DomainSpec::annulus(dimension_n, inner_radius_length, radius_length);
  throw ConfigError("unknown domain_shape: " + domain_shape);
}

OperatorSpec ExperimentConfig::make_operator() const {
  OperatorSpec spec;
  if (operator_kind == "laplacian")
    spec.kind = OperatorSpec::Kind::Laplacian;
  else if (operator_kind == "bilaplacian")
    spec.kind = OperatorSpec::Kind::Bilaplacian;
  else if (operator_kind == "div_a_grad")
    spec.kind = OperatorSpec::Kind::DivAGrad;
  else
    throw ConfigError("unknown operator_kind: " + operator_kind);

  if (coefficient == "constant")
    spec.coefficient = OperatorSpec::Coefficient::Constant;
  else if (coefficient == "quadratic")
    spec.coefficient = OperatorSpec::Coefficient::Quadratic;
  else if (coefficient == "radial_bump")
    spec.coefficient = OperatorSpec::Coefficient::RadialBump;
  else
    throw ConfigError("unknown coefficient: " + coefficient);
  spec.beta = coefficient_beta;
  return spec;
}

QuadratureParams ExperimentConfig::make_quadrature() const {
  QuadratureParams q;
  q.spatial_h = quad_h_length;
  q.angular_nodes = angular_nodes;
  q.seed = seed;
  return q;
}

std::vector<double> ExperimentConfig::lambda_schedule() const {
  std::vector<double> lambdas(lambda_points);
  double ratio = std::pow(lambda_max / lambda_min, 1.0 / (lambda_points - 1));
  for (int i = 0; i < lambda_points; ++i) lambdas[i] = lambda_min * std::pow(ratio, i);
  return lambdas;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void VerifyReport::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << "lambda,chi,irrep,N_emp,N_pred,ratio,checked,pass\n";
  for (const auto& r : rows) {
    out << format_double(r.lambda) << ',' << r.chi << ',' << irrep_names[r.chi] << ','
        << r.n_emp << ',' << format_double(r.n_pred) << ',' << format_double(r.ratio) << ','
        << (r.checked ? 1 : 0) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

void VerifyReport::write_json(const std::string& path, const ExperimentConfig& config) const {
  json j;
  j["gamma"] = gamma;
  j["exponent"] = exponent;
  j["grid_size"] = grid_size;
  j["equivariance_defect"] = equivariance_defect;
  j["consistency_ok"] = consistency_ok;
  j["all_pass"] = all_pass;
  j["seed"] = config.seed;
  j["h_length"] = config.h_length;
  j["irreps"] = irrep_names;
  json slopes = json::array();
  for (double s : remainder_slopes) {
    if (std::isnan(s))
      slopes.push_back(nullptr);
    else
      slopes.push_back(s);
  }
  j["remainder_slopes"] = slopes;
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"lambda", r.lambda},
                         {"chi", r.chi},
                         {"N_emp", r.n_emp},
                         {"N_pred", r.n_pred},
                         {"ratio", r.ratio},
                         {"checked", r.checked},
                         {"pass", r.pass}});
  }
  j["rows"] = rows_json;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

VerifyReport run_verify(const ExperimentConfig& config) {
  FiniteGroup group = config.make_group();
  CharacterTable table = character_table(group);
  DomainSpec domain = config.make_domain();
  OperatorSpec op = config.make_operator();

  InteriorIndex interior = discretize(domain, config.h_length);
  auto perms = all_action_permutations(interior, group);
  SparseSymmetric L = assemble(op, interior);

  VerifyReport report;
  report.grid_size = interior.size();
  report.irrep_names = table.irrep_names;
  report.equivariance_defect = equivariance_check(L, perms);
  if (report.equivariance_defect != 0.0) report.all_pass = false;

  PrincipalSymbol symbol = principal_symbol(op);
  WeylPrediction pred = weyl_gamma(domain, symbol, config.make_quadrature());
  report.gamma = pred.gamma;
  report.exponent = pred.exponent;

  std::vector<SparseComplex> blocks;
  for (int chi = 0; chi < table.num_irreps(); ++chi)
    blocks.push_back(project_operator_sparse(L, isotypic_basis(table, perms, chi)));

  auto lambdas = config.lambda_schedule();
  std::vector<std::vector<double>> deviations(table.num_irreps());

  for (double lambda : lambdas) {
    int total = count_below(L, lambda);
    int block_sum = 0;
    for (int chi = 0; chi < table.num_irreps(); ++chi) {
      VerifyRow row;
      row.lambda = lambda;
      row.chi = chi;
      row.n_emp = count_below(blocks[chi], lambda);
      block_sum += row.n_emp;
      row.n_pred = predicted_count(pred, table.dims[chi], group.size(), lambda);
      row.ratio = row.n_pred > 0.0 ? row.n_emp / row.n_pred : 0.0;
      row.checked = row.n_pred >= config.min_predicted_count;
      row.pass = !row.checked ||
                 (row.ratio >= config.ratio_band_low && row.ratio <= config.ratio_band_high);
      if (!row.pass) report.all_pass = false;
      deviations[chi].push_back(std::abs(row.n_emp - row.n_pred));
      report.rows.push_back(row);
    }
    if (block_sum != total) {
      report.consistency_ok = false;
      report.all_pass = false;
    }
  }

  for (int chi = 0; chi < table.num_irreps(); ++chi) {
    try {
      report.remainder_slopes.push_back(remainder_fit(lambdas, deviations[chi]).slope);
    } catch (const DegenerateFit&) {
      report.remainder_slopes.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return report;
}

OracleComparison run_compare_oracle(const ExperimentConfig& config) {
  if (config.domain_shape != "square" || config.operator_kind != "laplacian" ||
      config.dimension_n != 2)
    throw OracleUnavailable("continuum oracle requires the 2D square Laplacian");

  FiniteGroup group = config.make_group();
  CharacterTable table = character_table(group);
  DomainSpec domain = config.make_domain();
  InteriorIndex interior = discretize(domain, config.h_length);
  auto perms = all_action_permutations(interior, group);
  SparseSymmetric L = assemble(config.make_operator(), interior);

  std::vector<SparseComplex> blocks;
  for (int chi = 0; chi < table.num_irreps(); ++chi)
    blocks.push_back(project_operator_sparse(L, isotypic_basis(table, perms, chi)));

  double side = 2.0 * config.half_width_length;
  OracleComparison cmp;
  for (double lambda : config.lambda_schedule()) {
    auto cont = continuum_square_counts(group, table, side, lambda);
    double drift = 0.0;
    double scale = 1.0;
    for (int chi = 0; chi < table.num_irreps(); ++chi) {
      int n_disc = count_below(blocks[chi], lambda);
      drift = std::max(drift, std::abs(n_disc - cont.per_chi[chi]));
      scale = std::max(scale, cont.per_chi[chi]);
    }
    cmp.lambdas.push_back(lambda);
    cmp.max_drift.push_back(drift);
    cmp.worst_relative_drift = std::max(cmp.worst_relative_drift, drift / scale);
  }
  return cmp;
}

}  // namespace equiweyl
