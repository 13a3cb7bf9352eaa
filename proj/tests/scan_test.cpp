#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "topocorr/model.hpp"
#include "topocorr/scan.hpp"

namespace topocorr {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_path(const std::string& name) {
  return fs::temp_directory_path() / ("topocorr_scan_test_" + name);
}

std::vector<SweepRow> synthetic_rows(double lo, double hi, int n, double (*f)(double)) {
  std::vector<SweepRow> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].beta = lo + (hi - lo) * i / (n - 1);
    rows[i].discord_global = f(rows[i].beta);
  }
  return rows;
}

SweepConfig small_config() {
  SweepConfig c;
  c.beta_min = 0.1;
  c.beta_max = 0.9;
  c.steps = 5;
  c.ising_size = 4;
  c.threads = 1;
  return c;
}

TEST(SweepConfig, ValidationNamesTheProblem) {
  auto rejects = [](SweepConfig c, const std::string& needle) {
    try {
      validate(c);
    } catch (const std::invalid_argument& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
      return;
    }
    ADD_FAILURE() << "accepted config expected to fail on " << needle;
  };
  SweepConfig c;
  c.beta_min = -0.1;
  rejects(c, "beta_min");
  c = {};
  c.beta_min = 1.0;
  c.beta_max = 0.5;
  rejects(c, "beta_min");
  c = {};
  c.beta_max = 3.5;
  rejects(c, "beta_max");
  c = {};
  c.steps = 1;
  rejects(c, "steps");
  c = {};
  c.methods.clear();
  rejects(c, "methods");
  c = {};
  c.L = 5;
  rejects(c, "L <= 4");
  c = {};
  c.ising_size = 17;
  rejects(c, "transfer_matrix");
  c = {};
  c.methods = {IsingMethod::BruteForce};
  c.ising_size = 5;
  rejects(c, "brute_force");
  c = {};
  c.lambda1 = 0.0;
  rejects(c, "lambda");
  EXPECT_NO_THROW(validate(SweepConfig{}));
}

TEST(SweepConfig, GridIsUniformAndHitsEndpoints) {
  SweepConfig c;
  const auto g = beta_grid(c);
  ASSERT_EQ(g.size(), 151u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.5);
  EXPECT_NEAR(g[44], 0.44, 1e-15);
}

TEST(EvaluatePoint, InfiniteTemperatureRow) {
  SweepConfig c;
  c.L = 3;
  c.ising_size = 6;
  const SweepRow r = evaluate_point(c, 0.0);
  EXPECT_NEAR(r.sigma_z, 0.0, 1e-12);
  EXPECT_NEAR(r.theta_theta_nn, 0.0, 1e-12);
  EXPECT_NEAR(r.a_sq, 0.5, 1e-12);
  EXPECT_NEAR(r.discord_global, 1.0, 1e-12);
  EXPECT_NEAR(r.mi_global, 2.0, 1e-12);
  EXPECT_NEAR(r.mi_vertex_sharing, 0.0, 1e-12);
  EXPECT_NEAR(r.mi_plaquette_parallel, 0.0, 1e-12);
  EXPECT_NEAR(r.discord_local, 0.0, 1e-12);
  EXPECT_LT(r.eigen_residual, 1e-10);
  EXPECT_EQ(r.global_method, Source::Onsager);
  EXPECT_EQ(r.local_method, Source::StateVector);
  EXPECT_TRUE(r.finite_size_flag);
}

TEST(EvaluatePoint, DeepOrderedPhase) {
  SweepConfig c;
  c.methods = {IsingMethod::Onsager};
  const SweepRow r = evaluate_point(c, 3.0);
  EXPECT_LT(r.discord_global, 1e-3);
  EXPECT_EQ(r.local_method, Source::None);
  EXPECT_FALSE(r.finite_size_flag);
  EXPECT_TRUE(std::isnan(r.discord_local));
  EXPECT_TRUE(std::isnan(r.eigen_residual));
  EXPECT_THROW(evaluate_point(c, 3.1), std::invalid_argument);
  EXPECT_THROW(evaluate_point(c, -0.1), std::invalid_argument);
}

TEST(EvaluatePoint, StateVectorAgreesWithIsingEngines) {
  const double beta = 0.4;
  SweepConfig sv;
  sv.methods = {IsingMethod::TransferMatrix};
  sv.L = 3;
  SweepConfig tm = sv;
  tm.L.reset();
  tm.ising_size = 3;
  SweepConfig bf = tm;
  bf.methods = {IsingMethod::BruteForce};

  const SweepRow a = evaluate_point(sv, beta);
  EXPECT_EQ(a.global_method, Source::StateVector);
  for (const SweepConfig& other : {tm, bf}) {
    const SweepRow b = evaluate_point(other, beta);
    for (const auto& col : numeric_columns()) {
      if (col == "eigen_residual") continue;
      EXPECT_NEAR(column_value(a, col), column_value(b, col), 1e-10) << col;
    }
  }
  EXPECT_EQ(evaluate_point(bf, beta).global_method, Source::BruteForce);
  EXPECT_EQ(evaluate_point(tm, beta).local_method, Source::TransferMatrix);
}

TEST(EvaluatePoint, UnrequestedPairKindIsNaN) {
  SweepConfig c = small_config();
  c.pair_kinds = {SpinPairKind::PlaquetteParallel};
  const SweepRow r = evaluate_point(c, 0.5);
  EXPECT_TRUE(std::isnan(r.mi_vertex_sharing));
  EXPECT_FALSE(std::isnan(r.mi_plaquette_parallel));
}

TEST(RunSweep, RowInvariants) {
  SweepConfig c;
  c.beta_max = 1.5;
  c.steps = 16;
  c.ising_size = 6;
  c.L = 2;
  for (const SweepRow& r : run_sweep(c)) {
    EXPECT_GE(r.a_sq, 0.5 - 1e-12);
    EXPECT_LE(r.a_sq, 1.0 + 1e-12);
    EXPECT_NEAR(r.mi_global, 2.0 * r.discord_global, 1e-12);
    EXPECT_GE(r.discord_global, 0.0);
    EXPECT_LE(r.discord_global, 1.0 + 1e-12);
    EXPECT_LT(r.discord_local, 1e-8);
    EXPECT_GE(r.mi_vertex_sharing, 0.0);
    EXPECT_LT(r.eigen_residual, 1e-10);
  }
}

TEST(RunSweep, ThreadCountDoesNotChangeResults) {
  SweepConfig c = small_config();
  c.steps = 9;
  c.threads = 1;
  const std::string one = format_csv(run_sweep(c), c);
  c.threads = 4;
  const auto four_rows = run_sweep(c);
  c.threads = 1;
  EXPECT_EQ(format_csv(four_rows, c), one);
}

TEST(CriticalPoint, OnsagerGridPeaksNearCriticalBeta) {
  SweepConfig c;
  c.methods = {IsingMethod::Onsager};
  c.beta_min = 0.30;
  c.beta_max = 0.60;
  c.steps = 151;
  const auto beta_star = detect_critical_point(run_sweep(c), "discord_global");
  ASSERT_TRUE(beta_star.has_value());
  EXPECT_GE(*beta_star, 0.4307);
  EXPECT_LE(*beta_star, 0.4507);
}

TEST(CriticalPoint, Examples) {
  const auto kink = synthetic_rows(0.0, 1.0, 101, [](double b) { return std::abs(b - 0.5); });
  const auto at = detect_critical_point(kink, "discord_global");
  ASSERT_TRUE(at.has_value());
  EXPECT_NEAR(*at, 0.5, 1e-12);

  const auto line = synthetic_rows(0.0, 1.0, 101, [](double b) { return 2.0 * b + 1.0; });
  EXPECT_FALSE(detect_critical_point(line, "discord_global").has_value());

  const auto step = synthetic_rows(0.0, 1.0, 101, [](double b) { return std::tanh(40 * (b - 0.3)); });
  EXPECT_NEAR(*detect_critical_point(step, "discord_global"), 0.3, 1e-12);
}

TEST(CriticalPoint, Rejections) {
  const auto few = synthetic_rows(0.0, 1.0, 4, [](double b) { return b; });
  EXPECT_THROW(detect_critical_point(few, "discord_global"), std::invalid_argument);
  auto uneven = synthetic_rows(0.0, 1.0, 10, [](double b) { return b * b; });
  uneven[5].beta += 0.03;
  EXPECT_THROW(detect_critical_point(uneven, "discord_global"), std::invalid_argument);
  const auto ok = synthetic_rows(0.0, 1.0, 10, [](double b) { return b; });
  EXPECT_THROW(detect_critical_point(ok, "no_such_column"), std::invalid_argument);
}

TEST(Csv, StructureAndDeterminism) {
  SweepConfig c = small_config();
  const fs::path p = temp_path("a.csv");
  c.output_path = p.string();
  write_csv(run_sweep(c), c, p.string());
  const std::string first = slurp(p);
  write_csv(run_sweep(c), c, p.string());
  EXPECT_EQ(slurp(p), first);

  std::istringstream in(first);
  std::string line;
  int comments = 0, data = 0;
  std::string header;
  while (std::getline(in, line)) {
    if (line.rfind('#', 0) == 0) {
      ++comments;
    } else if (header.empty()) {
      header = line;
    } else {
      ++data;
      EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12) << line;
    }
  }
  EXPECT_GE(comments, 10);
  EXPECT_EQ(data, 5);
  EXPECT_EQ(header.rfind("beta,sigma_z,theta_theta_nn,", 0), 0u);
  EXPECT_NE(header.find("global_method,local_method,finite_size_flag"), std::string::npos);
  EXPECT_NE(first.find("# steps=5\n"), std::string::npos);
  EXPECT_NE(first.find("# methods=onsager,transfer_matrix\n"), std::string::npos);
  EXPECT_NE(first.find(",onsager,transfer_matrix,1\n"), std::string::npos);
  fs::remove(p);
}

TEST(Csv, UnwritablePathIsReported) {
  SweepConfig c = small_config();
  const std::string bad = "/nonexistent_dir_for_topocorr/out.csv";
  try {
    write_csv(run_sweep(c), c, bad);
    ADD_FAILURE() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(bad), std::string::npos);
  }
}

TEST(Svg, CurvesAndCriticalMarker) {
  SweepConfig c = small_config();
  c.beta_min = 0.2;
  c.beta_max = 0.7;
  c.steps = 6;
  const auto rows = run_sweep(c);
  const fs::path p = temp_path("plot.svg");
  render_svg(rows, {"mi_vertex_sharing", "mi_plaquette_parallel"}, p.string());
  const std::string svg = slurp(p);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("data-column=\"mi_vertex_sharing\""), std::string::npos);
  EXPECT_NE(svg.find("data-column=\"mi_plaquette_parallel\""), std::string::npos);
  EXPECT_NE(svg.find("class=\"beta-c\""), std::string::npos);

  render_svg(rows, {"discord_global"}, p.string());
  const std::string single = slurp(p);
  std::size_t curves = 0;
  for (std::size_t pos = 0; (pos = single.find("class=\"curve\"", pos)) != std::string::npos; ++pos)
    ++curves;
  EXPECT_EQ(curves, 1u);
  fs::remove(p);

  EXPECT_THROW(render_svg({}, {"discord_global"}, p.string()), std::invalid_argument);
  EXPECT_THROW(render_svg(rows, {"bogus"}, p.string()), std::invalid_argument);
}

TEST(SelfCheck, AllChecksPass) {
  for (const auto& r : run_self_check()) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
}

}  // namespace
}  // namespace topocorr
