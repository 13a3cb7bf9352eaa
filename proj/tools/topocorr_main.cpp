// topocorr: correlation sweeps for the deformed toric code.
//
//   topocorr sweep   [--beta-min ..] [--beta-max ..] [--steps ..] [--L ..] ...
//   topocorr check
//   topocorr discord <density-matrix-file>
//
// Failures print one JSON object on stderr and exit nonzero.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "topocorr/quantum.hpp"
#include "topocorr/scan.hpp"

namespace {

using namespace topocorr;
using json = nlohmann::json;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Dimension line, then dim*dim row-major "re im" pairs.
DensityMatrix read_density_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  int dim = 0;
  if (!(in >> dim) || (dim != 2 && dim != 4)) {
    throw std::invalid_argument("'" + path + "': first entry must be the dimension 2 or 4");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw std::invalid_argument("'" + path + "': expected " + std::to_string(dim * dim) +
                                    " complex entries");
      }
      m(r, c) = {re, im};
    }
  }
  return DensityMatrix(m);
}

int run_sweep_command(SweepConfig config, const std::string& methods,
                      const std::string& kinds, const std::string& critical_column) {
  config.methods.clear();
  for (const auto& m : split_list(methods)) config.methods.push_back(parse_ising_method(m));
  config.pair_kinds.clear();
  for (const auto& k : split_list(kinds)) config.pair_kinds.push_back(parse_pair_kind(k));
  validate(config);

  const auto rows = run_sweep(config);
  if (config.output_path.empty()) {
    std::cout << format_csv(rows, config);
  } else {
    write_csv(rows, config, config.output_path);
  }
  if (config.emit_svg) {
    const std::string base = config.output_path.empty() ? "sweep" : config.output_path;
    render_svg(rows, {"mi_vertex_sharing", "mi_plaquette_parallel"}, base + ".local.svg");
    render_svg(rows, {"discord_global", "mi_global"}, base + ".global.svg");
  }
  if (rows.size() >= 5) {
    const auto beta_star = detect_critical_point(rows, critical_column);
    std::cerr << "critical beta (" << critical_column << "): "
              << (beta_star ? std::to_string(*beta_star) : std::string("none")) << '\n';
  }
  return 0;
}

int run_check_command() {
  bool ok = true;
  for (const auto& r : run_self_check()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

int run_discord_command(const std::string& path) {
  const DensityMatrix rho = read_density_matrix(path);
  json report;
  report["dim"] = rho.dim();
  report["entropy"] = von_neumann_entropy(rho);
  if (rho.dim() == 4) {
    const DiscordReport d = analyze_discord(rho);
    report["entropy_a"] = d.entropy_a;
    report["entropy_b"] = von_neumann_entropy(reduce_to_second(rho));
    report["mutual_information"] = d.mutual_information;
    report["classical_correlation"] = d.classical_correlation;
    report["discord"] = d.discord;
    report["best_theta"] = d.best_basis.theta;
    report["best_phi"] = d.best_basis.phi;
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlations and quantum discord across the deformed toric-code transition"};
  app.require_subcommand(1);

  SweepConfig config;
  std::string methods = "onsager,transfer_matrix";
  std::string kinds = "vertex_sharing,plaquette_parallel";
  std::string critical_column = "discord_global";
  int quantum_L = 0;
  auto* sweep = app.add_subcommand("sweep", "evaluate all observables over a beta grid");
  sweep->add_option("--beta-min", config.beta_min)->capture_default_str();
  sweep->add_option("--beta-max", config.beta_max)->capture_default_str();
  sweep->add_option("--steps", config.steps)->capture_default_str();
  sweep->add_option("--L", quantum_L, "state-vector lattice size (2-4); 0 disables");
  sweep->add_option("--ising-size", config.ising_size)->capture_default_str();
  sweep->add_option("--methods", methods, "comma list of brute_force,transfer_matrix,onsager")
      ->capture_default_str();
  sweep->add_option("--pair-kinds", kinds, "comma list of vertex_sharing,plaquette_parallel")
      ->capture_default_str();
  sweep->add_option("--output", config.output_path, "CSV path (stdout when omitted)");
  sweep->add_flag("--svg", config.emit_svg, "also write <output>.local.svg and <output>.global.svg");
  sweep->add_option("--lambda0", config.lambda0)->capture_default_str();
  sweep->add_option("--lambda1", config.lambda1)->capture_default_str();
  sweep->add_option("--threads", config.threads, "worker threads (0 = all cores)");
  sweep->add_option("--critical-column", critical_column)->capture_default_str();

  auto* check = app.add_subcommand("check", "eigenstate and oracle cross-validation suite");

  std::string dm_path;
  auto* discord = app.add_subcommand("discord", "report entropies and discord of a density matrix");
  discord->add_option("file", dm_path, "dimension line, then row-major 're im' pairs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }

  try {
    if (*sweep) {
      if (quantum_L > 0) config.L = quantum_L;
      return run_sweep_command(config, methods, kinds, critical_column);
    }
    if (*check) return run_check_command();
    if (*discord) return run_discord_command(dm_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "invalid_argument"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "runtime"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 1;
}
