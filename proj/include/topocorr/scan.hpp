#pragma once

// Sweeps of every correlation observable over a grid of couplings beta.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topocorr/ising.hpp"
#include "topocorr/lattice.hpp"

namespace topocorr {

inline constexpr double kMaxSweepBeta = 3.0;

struct SweepConfig {
  double beta_min = 0.0;
  double beta_max = 1.5;
  int steps = 151;
  std::optional<int> L;  // state-vector lattice, 2..4
  int ising_size = 12;   // square torus for finite-lattice Ising methods
  std::vector<IsingMethod> methods = {IsingMethod::Onsager, IsingMethod::TransferMatrix};
  std::vector<SpinPairKind> pair_kinds = {SpinPairKind::VertexSharing,
                                          SpinPairKind::PlaquetteParallel};
  std::string output_path;
  bool emit_svg = false;
  double lambda0 = 1.0;
  double lambda1 = 1.0;
  int threads = 0;  // 0 picks the hardware concurrency
};

// Where a group of columns came from.
enum class Source { None, StateVector, BruteForce, TransferMatrix, Onsager };
std::string_view to_string(Source source);

struct SweepRow {
  double beta;
  double sigma_z;
  double theta_theta_nn;
  double mi_vertex_sharing;      // NaN when the kind was not requested
  double mi_plaquette_parallel;  // NaN when the kind was not requested
  double discord_local;          // max over the requested pair kinds
  double a_sq;
  double discord_global;
  double mi_global;
  double eigen_residual;  // NaN without a state-vector lattice
  Source global_method;
  Source local_method;
  bool finite_size_flag;  // finite torus standing in for the infinite lattice
};

// Throws std::invalid_argument naming the offending field or size limit.
void validate(const SweepConfig& config);

std::vector<double> beta_grid(const SweepConfig& config);

// One beta point; beta only needs to lie in [0, kMaxSweepBeta].
SweepRow evaluate_point(const SweepConfig& config, double beta);

// Rows in ascending beta, evaluated concurrently.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Names of the numeric columns, in CSV order.
const std::vector<std::string>& numeric_columns();
double column_value(const SweepRow& row, std::string_view column);

// Beta at the peak of |d column / d beta| (central differences). When that
// profile is flat, the peak of the second difference is used instead, which
// locates kinks. nullopt when both are flat (max/median < 2).
std::optional<double> detect_critical_point(const std::vector<SweepRow>& rows,
                                            std::string_view column);

// Config echoed as '#' comments, header, one line per row, %.12g floats.
void write_csv(const std::vector<SweepRow>& rows, const SweepConfig& config,
               const std::string& path);
std::string format_csv(const std::vector<SweepRow>& rows, const SweepConfig& config);

void render_svg(const std::vector<SweepRow>& rows, const std::vector<std::string>& columns,
                const std::string& path);

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Eigenstate and cross-method consistency checks on small lattices.
std::vector<CheckResult> run_self_check();

}  // namespace topocorr
