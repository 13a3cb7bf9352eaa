#include "topocorr/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "topocorr/model.hpp"
#include "topocorr/quantum.hpp"

namespace topocorr {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::None:
      return "none";
    case Source::StateVector:
      return "state_vector";
    case Source::BruteForce:
      return "brute_force";
    case Source::TransferMatrix:
      return "transfer_matrix";
    case Source::Onsager:
      return "onsager";
  }
  return "unknown";
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool uses(const SweepConfig& c, IsingMethod m) {
  return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

bool uses(const SweepConfig& c, SpinPairKind k) {
  return std::find(c.pair_kinds.begin(), c.pair_kinds.end(), k) != c.pair_kinds.end();
}

Source finite_ising_source(const SweepConfig& c) {
  if (uses(c, IsingMethod::TransferMatrix)) return Source::TransferMatrix;
  if (uses(c, IsingMethod::BruteForce)) return Source::BruteForce;
  return Source::None;
}

Source global_source(const SweepConfig& c) {
  if (uses(c, IsingMethod::Onsager)) return Source::Onsager;
  if (c.L) return Source::StateVector;
  return finite_ising_source(c);
}

Source local_source(const SweepConfig& c) {
  if (c.L) return Source::StateVector;
  return finite_ising_source(c);
}

IsingMethod as_method(Source s) {
  return s == Source::BruteForce ? IsingMethod::BruteForce : IsingMethod::TransferMatrix;
}

}  // namespace

void validate(const SweepConfig& c) {
  if (!(c.beta_min >= 0.0) || !(c.beta_min < c.beta_max) || !(c.beta_max <= kMaxSweepBeta)) {
    throw std::invalid_argument("need 0 <= beta_min < beta_max <= " +
                                std::to_string(kMaxSweepBeta) + ", got [" +
                                std::to_string(c.beta_min) + ", " + std::to_string(c.beta_max) +
                                "]");
  }
  if (c.steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (c.methods.empty()) throw std::invalid_argument("methods must not be empty");
  if (c.L && (*c.L < 2 || *c.L > kMaxStateVectorL)) {
    throw std::invalid_argument("state-vector lattice needs 2 <= L <= " +
                                std::to_string(kMaxStateVectorL) + ", got " +
                                std::to_string(*c.L));
  }
  if (c.ising_size < 2) throw std::invalid_argument("ising_size must be >= 2");
  if (uses(c, IsingMethod::TransferMatrix) && c.ising_size > kTransferMaxWidth) {
    throw std::invalid_argument("transfer_matrix: ising_size " + std::to_string(c.ising_size) +
                                " exceeds width limit " + std::to_string(kTransferMaxWidth));
  }
  if (finite_ising_source(c) == Source::BruteForce &&
      c.ising_size * c.ising_size > kBruteForceMaxSites) {
    throw std::invalid_argument("brute_force: ising_size " + std::to_string(c.ising_size) +
                                " exceeds site limit " + std::to_string(kBruteForceMaxSites));
  }
  if (!(c.lambda0 > 0.0) || !(c.lambda1 > 0.0)) {
    throw std::invalid_argument("lambda0 and lambda1 must be positive");
  }
}

std::vector<double> beta_grid(const SweepConfig& c) {
  std::vector<double> grid(c.steps);
  const double h = (c.beta_max - c.beta_min) / (c.steps - 1);
  for (int i = 0; i < c.steps; ++i) grid[i] = c.beta_min + i * h;
  grid.back() = c.beta_max;
  return grid;
}

SweepRow evaluate_point(const SweepConfig& c, double beta) {
  if (!(beta >= 0.0) || beta > kMaxSweepBeta) {
    throw std::invalid_argument("beta " + std::to_string(beta) + " outside [0, " +
                                std::to_string(kMaxSweepBeta) + "]");
  }
  SweepRow row{};
  row.beta = beta;
  row.global_method = global_source(c);
  row.local_method = local_source(c);
  row.finite_size_flag = row.global_method == Source::Onsager && row.local_method != Source::None;
  row.mi_vertex_sharing = kNaN;
  row.mi_plaquette_parallel = kNaN;
  row.discord_local = kNaN;
  row.eigen_residual = kNaN;

  std::optional<TorusLattice> small;
  std::optional<GroundState> state;
  if (c.L) {
    small.emplace(*c.L);
    state.emplace(build_ground_state(*small, beta));
    row.eigen_residual = eigen_residual(*state, c.lambda0, c.lambda1);
  }

  std::optional<double> finite_nn;
  if (row.local_method != Source::None) {
    const bool from_state = row.local_method == Source::StateVector;
    const TorusLattice lattice = from_state ? *small : TorusLattice(c.ising_size);
    const IsingModel ising{lattice.size(), lattice.size(), beta};
    double worst_discord = 0.0;
    for (SpinPairKind kind : {SpinPairKind::VertexSharing, SpinPairKind::PlaquetteParallel}) {
      if (!uses(c, kind)) continue;
      DensityMatrix rho = [&] {
        if (from_state) {
          const SpinPair pair = resolve_pair(lattice, kind);
          return reduced_two_spin(*state, pair.first, pair.second);
        }
        const PairMoments m = pair_moments_via_ising(ising, lattice, kind,
                                                     as_method(row.local_method));
        finite_nn = m.m_first;
        return diagonal_two_spin(m);
      }();
      const double mi = mutual_information(rho);
      (kind == SpinPairKind::VertexSharing ? row.mi_vertex_sharing : row.mi_plaquette_parallel) =
          mi;
      worst_discord = std::max(worst_discord, quantum_discord(rho));
    }
    row.discord_local = worst_discord;
  }

  SpinRestSplit split{};
  switch (row.global_method) {
    case Source::Onsager: {
      const double nn = onsager_nn_correlation(beta);
      row.sigma_z = nn;
      row.theta_theta_nn = nn;
      split = spin_vs_rest(nn);
      break;
    }
    case Source::StateVector: {
      const EdgeId k = 0;
      row.sigma_z = expectation(*state, PauliString().set(k, Pauli::Z));
      split = spin_vs_rest(*state, k);
      row.theta_theta_nn = split.a_sq - split.b_sq;
      break;
    }
    case Source::BruteForce:
    case Source::TransferMatrix: {
      if (!finite_nn || row.local_method != row.global_method) {
        const IsingModel ising{c.ising_size, c.ising_size, beta};
        const std::vector<VertexId> nn_pair = {0, 1};
        finite_nn = row.global_method == Source::BruteForce
                        ? brute_force_moment(ising, nn_pair).value
                        : transfer_matrix_moment(ising, nn_pair).value;
      }
      row.sigma_z = *finite_nn;
      row.theta_theta_nn = *finite_nn;
      split = spin_vs_rest(*finite_nn);
      break;
    }
    case Source::None:
      throw std::invalid_argument("no method available for the global columns");
  }
  row.a_sq = split.a_sq;
  const GlobalCorrelation g = global_discord(split.a_sq, split.b_sq);
  row.discord_global = g.discord;
  row.mi_global = g.mutual_info;
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  const std::vector<double> betas = beta_grid(config);
  std::vector<SweepRow> rows(betas.size());

  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(betas.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < betas.size(); i = next++) {
      rows[i] = evaluate_point(config, betas[i]);
    }
  };
  std::vector<std::future<void>> pool;
  for (unsigned w = 1; w < workers; ++w) pool.push_back(std::async(std::launch::async, work));
  work();
  for (auto& f : pool) f.get();
  return rows;
}

const std::vector<std::string>& numeric_columns() {
  static const std::vector<std::string> names = {
      "beta",       "sigma_z", "theta_theta_nn", "mi_vertex_sharing", "mi_plaquette_parallel",
      "discord_local", "a_sq", "discord_global", "mi_global",         "eigen_residual"};
  return names;
}

double column_value(const SweepRow& r, std::string_view column) {
  if (column == "beta") return r.beta;
  if (column == "sigma_z") return r.sigma_z;
  if (column == "theta_theta_nn") return r.theta_theta_nn;
  if (column == "mi_vertex_sharing") return r.mi_vertex_sharing;
  if (column == "mi_plaquette_parallel") return r.mi_plaquette_parallel;
  if (column == "discord_local") return r.discord_local;
  if (column == "a_sq") return r.a_sq;
  if (column == "discord_global") return r.discord_global;
  if (column == "mi_global") return r.mi_global;
  if (column == "eigen_residual") return r.eigen_residual;
  throw std::invalid_argument("unknown column '" + std::string(column) + "'");
}

namespace {

std::optional<std::size_t> peak_index(std::vector<double> profile) {
  std::vector<double> mags(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) mags[i] = std::abs(profile[i]);
  const auto top = std::max_element(mags.begin(), mags.end());
  if (*top == 0.0) return std::nullopt;
  std::vector<double> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (median > 0.0 && *top / median < 2.0) return std::nullopt;
  return static_cast<std::size_t>(top - mags.begin());
}

}  // namespace

std::optional<double> detect_critical_point(const std::vector<SweepRow>& rows,
                                            std::string_view column) {
  if (rows.size() < 5) throw std::invalid_argument("critical point detection needs >= 5 rows");
  const double h = rows[1].beta - rows[0].beta;
  if (!(h > 0.0)) throw std::invalid_argument("beta grid must be increasing");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i].beta - rows[i - 1].beta - h) > 1e-6 * h) {
      throw std::invalid_argument("beta grid is not uniform");
    }
  }
  std::vector<double> y(rows.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y[i] = column_value(rows[i], column);
    if (!std::isfinite(y[i])) {
      throw std::invalid_argument("column '" + std::string(column) + "' has non-finite values");
    }
    scale = std::max(scale, std::abs(y[i]));
  }

  const std::size_t n = y.size();
  std::vector<double> slope(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) slope[i - 1] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  if (const auto k = peak_index(slope)) return rows[*k + 1].beta;

  // Second differences at rounding level count as zero.
  const double floor = 1e3 * std::numeric_limits<double>::epsilon() * scale / (h * h);
  std::vector<double> curvature(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d2 = (y[i + 1] - 2.0 * y[i] + y[i - 1]) / (h * h);
    curvature[i - 1] = std::abs(d2) > floor ? d2 : 0.0;
  }
  if (const auto k = peak_index(curvature)) return rows[*k + 1].beta;
  return std::nullopt;
}

}  // namespace topocorr
