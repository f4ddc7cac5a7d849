#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "equiweyl/experiment.hpp"
#include "equiweyl/isotypic.hpp"
#include "equiweyl/oracle.hpp"

namespace ew = equiweyl;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_complex(std::complex<double> z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%g%+gi", z.real(), z.imag());
  return buf;
}

int cmd_table(const std::string& family, int k, int n) {
  ew::FiniteGroup group = ew::build_group(ew::parse_family(family), k, n);
  ew::CharacterTable table = ew::character_table(group);
  std::cout << "irrep";
  for (int c = 0; c < table.num_classes(); ++c)
    std::cout << ",class" << c << "(size " << table.classes[c].size() << ")";
  std::cout << "\n";
  for (int i = 0; i < table.num_irreps(); ++i) {
    std::cout << table.irrep_names[i];
    for (int c = 0; c < table.num_classes(); ++c)
      std::cout << ',' << fmt_complex(table.values(i, c));
    std::cout << "\n";
  }
  return 0;
}

int cmd_kappa(const std::string& family, int k, int n) {
  ew::FiniteGroup group = ew::build_group(ew::parse_family(family), k, n);
  std::cout << "element,kappa,fixed_dim\n";
  for (int g = 1; g < group.size(); ++g) {
    ew::FixedPointData d = ew::fixed_point_data(group, g);
    std::cout << g << ',' << fmt(d.kappa) << ',' << d.fixed_subspace.cols() << "\n";
  }
  return 0;
}

int cmd_check_domain(const ew::ExperimentConfig& cfg) {
  ew::FiniteGroup group = cfg.make_group();
  ew::DomainSpec domain = cfg.make_domain();
  ew::InteriorIndex interior = ew::discretize(domain, cfg.h_length);

  bool closed = true;
  try {
    ew::all_action_permutations(interior, group);
  } catch (const ew::GridNotClosed&) {
    closed = false;
  }
  double vol = interior.size() * std::pow(cfg.h_length, cfg.dimension_n);
  std::cout << "N," << interior.size() << "\n";
  std::cout << "volume_estimate," << fmt(vol) << "\n";
  std::cout << "grid_closed," << (closed ? "yes" : "no") << "\n";
  std::cout << "rho,boundary_tube_volume,stderr\n";
  for (double rho : {0.04, 0.02, 0.01, 0.005}) {
    auto tube = ew::boundary_tube_volume(domain, rho, cfg.mc_samples, cfg.seed);
    std::cout << fmt(rho) << ',' << fmt(tube.volume) << ',' << fmt(tube.stderr_) << "\n";
  }
  return 0;
}

int cmd_spectrum(const ew::ExperimentConfig& cfg) {
  ew::FiniteGroup group = cfg.make_group();
  ew::CharacterTable table = ew::character_table(group);
  ew::InteriorIndex interior = ew::discretize(cfg.make_domain(), cfg.h_length);
  auto perms = ew::all_action_permutations(interior, group);
  ew::SparseSymmetric L = ew::assemble(cfg.make_operator(), interior);
  ew::Spectrum spec = ew::solve_all_blocks(L, table, perms);

  std::cout << "chi,index,eigenvalue\n";
  for (int chi = 0; chi < table.num_irreps(); ++chi)
    for (int i = 0; i < spec.eigenvalues[chi].size(); ++i)
      std::cout << chi << ',' << i << ',' << fmt(spec.eigenvalues[chi](i)) << "\n";
  return 0;
}

int cmd_count(const ew::ExperimentConfig& cfg) {
  ew::FiniteGroup group = cfg.make_group();
  ew::CharacterTable table = ew::character_table(group);
  ew::InteriorIndex interior = ew::discretize(cfg.make_domain(), cfg.h_length);
  auto perms = ew::all_action_permutations(interior, group);
  ew::SparseSymmetric L = ew::assemble(cfg.make_operator(), interior);

  std::vector<ew::SparseComplex> blocks;
  for (int chi = 0; chi < table.num_irreps(); ++chi)
    blocks.push_back(ew::project_operator_sparse(L, ew::isotypic_basis(table, perms, chi)));

  std::cout << "lambda,chi,N_emp\n";
  for (double lambda : cfg.lambda_schedule())
    for (int chi = 0; chi < table.num_irreps(); ++chi)
      std::cout << fmt(lambda) << ',' << chi << ',' << ew::count_below(blocks[chi], lambda)
                << "\n";
  return 0;
}

int cmd_predict(const ew::ExperimentConfig& cfg) {
  ew::FiniteGroup group = cfg.make_group();
  ew::CharacterTable table = ew::character_table(group);
  ew::PrincipalSymbol symbol = ew::principal_symbol(cfg.make_operator());
  ew::WeylPrediction pred = ew::weyl_gamma(cfg.make_domain(), symbol, cfg.make_quadrature());

  std::cout << "gamma," << fmt(pred.gamma) << "\nexponent," << fmt(pred.exponent) << "\n";
  std::cout << "lambda,chi,N_pred\n";
  for (double lambda : cfg.lambda_schedule())
    for (int chi = 0; chi < table.num_irreps(); ++chi)
      std::cout << fmt(lambda) << ',' << chi << ','
                << fmt(ew::predicted_count(pred, table.dims[chi], group.size(), lambda)) << "\n";
  return 0;
}

int cmd_weyl_volume(const ew::ExperimentConfig& cfg) {
  ew::DomainSpec domain = cfg.make_domain();
  ew::PrincipalSymbol symbol = ew::principal_symbol(cfg.make_operator());
  auto quad = cfg.make_quadrature();

  std::cout << "lambda,value,stderr,method,seed\n";
  for (double lambda : cfg.lambda_schedule()) {
    for (auto mode : {ew::VolumeMode::ClosedRadial, ew::VolumeMode::MonteCarlo}) {
      auto est = ew::vol_W_lambda(domain, symbol, lambda, mode, cfg.mc_samples, cfg.seed, quad);
      std::cout << fmt(lambda) << ',' << fmt(est.value) << ',' << fmt(est.stderr_) << ','
                << est.method << ',' << cfg.seed << "\n";
    }
  }
  return 0;
}

int cmd_rv_volume(const ew::ExperimentConfig& cfg) {
  ew::DomainSpec domain = cfg.make_domain();
  ew::PrincipalSymbol symbol = ew::principal_symbol(cfg.make_operator());
  ew::SymbolWeights weights;

  std::cout << "lambda,value,stderr,method,seed\n";
  for (double lambda : cfg.lambda_schedule()) {
    auto est = ew::vol_RV(domain, symbol, weights, lambda, cfg.mc_samples, cfg.seed);
    std::cout << fmt(lambda) << ',' << fmt(est.value) << ',' << fmt(est.stderr_) << ','
              << est.method << ',' << cfg.seed << "\n";
  }
  return 0;
}

int cmd_verify(const ew::ExperimentConfig& cfg, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  ew::VerifyReport report = ew::run_verify(cfg);
  report.write_csv(out_dir + "/counts.csv");
  report.write_json(out_dir + "/report.json", cfg);
  std::cout << (report.all_pass ? "PASS" : "FAIL") << " gamma=" << fmt(report.gamma)
            << " N=" << report.grid_size << "\n";
  return report.all_pass ? 0 : 1;
}

int cmd_compare_oracle(const ew::ExperimentConfig& cfg) {
  ew::OracleComparison cmp = ew::run_compare_oracle(cfg);
  std::cout << "lambda,max_drift\n";
  for (std::size_t i = 0; i < cmp.lambdas.size(); ++i)
    std::cout << fmt(cmp.lambdas[i]) << ',' << fmt(cmp.max_drift[i]) << "\n";
  std::cout << "worst_relative_drift," << fmt(cmp.worst_relative_drift) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry-reduced Weyl law verification toolkit"};
  app.require_subcommand(1);

  std::string family = "cyclic";
  int k = 1, n = 2;
  std::string config_path, out_dir = ".";

  auto* table = app.add_subcommand("table", "print the character table as CSV");
  table->add_option("family", family)->required();
  table->add_option("k", k)->required();
  table->add_option("n", n)->required();

  auto* kappa = app.add_subcommand("kappa", "fixed-point separation constants per element");
  kappa->add_option("family", family)->required();
  kappa->add_option("k", k)->required();
  kappa->add_option("n", n)->required();

  const char* with_config[] = {"check-domain", "spectrum",    "count",         "predict",
                               "weyl-volume",  "rv-volume",   "verify",        "compare-oracle"};
  const char* descr[] = {"grid size, closure, and tube volumes",
                         "per-irrep eigenvalues as CSV",
                         "per-irrep counting function as CSV",
                         "leading-term predictions as CSV",
                         "reduced Weyl volume, both quadrature routes",
                         "remainder-set volume as CSV",
                         "full pipeline with report.json and counts.csv",
                         "discrete counts vs continuum enumeration"};
  for (int i = 0; i < 8; ++i) {
    auto* sub = app.add_subcommand(with_config[i], descr[i]);
    sub->add_option("--config", config_path, "path to a JSON config")->required();
    if (std::string(with_config[i]) == "verify")
      sub->add_option("--out", out_dir, "output directory");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("table")) return cmd_table(family, k, n);
    if (app.got_subcommand("kappa")) return cmd_kappa(family, k, n);

    ew::ExperimentConfig cfg = ew::ExperimentConfig::from_json_file(config_path);
    if (app.got_subcommand("check-domain")) return cmd_check_domain(cfg);
    if (app.got_subcommand("spectrum")) return cmd_spectrum(cfg);
    if (app.got_subcommand("count")) return cmd_count(cfg);
    if (app.got_subcommand("predict")) return cmd_predict(cfg);
    if (app.got_subcommand("weyl-volume")) return cmd_weyl_volume(cfg);
    if (app.got_subcommand("rv-volume")) return cmd_rv_volume(cfg);
    if (app.got_subcommand("verify")) return cmd_verify(cfg, out_dir);
    if (app.got_subcommand("compare-oracle")) return cmd_compare_oracle(cfg);
  } catch (const ew::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ew::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
