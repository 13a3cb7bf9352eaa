#include <cmath>
#include <cstdio>
#include <string>

#include "topocorr/model.hpp"
#include "topocorr/quantum.hpp"
#include "topocorr/scan.hpp"

namespace topocorr {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

CheckResult below(std::string name, double value, double bound) {
  return {std::move(name), value < bound, "value " + sci(value) + " bound " + sci(bound)};
}

}  // namespace

std::vector<CheckResult> run_self_check() {
  std::vector<CheckResult> out;
  const double bc = critical_beta();

  for (int L : {2, 3}) {
    const TorusLattice lattice(L);
    double worst = 0.0;
    for (double beta : {0.0, 0.25, bc, 0.8}) {
      worst = std::max(worst, eigen_residual(build_ground_state(lattice, beta), 1.0, 1.0));
    }
    out.push_back(below("eigenstate_residual_L" + std::to_string(L), worst, 1e-10));
  }

  for (int L : {2, 3}) {
    const TorusLattice lattice(L);
    const GroundState gs = build_ground_state(lattice, 0.4);
    const IsingModel ising{L, L, 0.4};
    double worst = 0.0;
    for (EdgeId i = 0; i < lattice.num_edges(); ++i) {
      const EdgeId single[] = {i};
      worst = std::max(worst, std::abs(expectation(gs, PauliString::z_string(single)) -
                                       brute_force_moment(ising, edges_to_vertex_support(
                                                                     lattice, single))
                                           .value));
      for (EdgeId j = i + 1; j < lattice.num_edges(); ++j) {
        const EdgeId pair[] = {i, j};
        const double zz = expectation(gs, PauliString::z_string(pair));
        const double ising_zz =
            brute_force_moment(ising, edges_to_vertex_support(lattice, pair)).value;
        worst = std::max(worst, std::abs(zz - ising_zz));
      }
    }
    out.push_back(below("ising_mapping_L" + std::to_string(L), worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (auto [lx, ly] : {std::pair{3, 3}, std::pair{4, 3}}) {
      const IsingModel m{lx, ly, 0.3};
      worst = std::max(worst, std::abs(transfer_matrix_log_partition(m) /
                                           brute_force_log_partition(m) -
                                       1.0));
      const std::vector<std::vector<VertexId>> sets = {
          {0, 1}, {0, m.site(1, 0)}, {m.site(0, 1), m.site(1, 0)}, {0, 1, m.site(1, 0), m.site(1, 1)}};
      const auto batch = transfer_matrix_moments(m, sets);
      for (std::size_t k = 0; k < sets.size(); ++k) {
        worst = std::max(worst, std::abs(batch.moments[k] - brute_force_moment(m, sets[k]).value));
      }
    }
    out.push_back(below("transfer_matrix_vs_brute_force", worst, 1e-10));
  }

  out.push_back(below("onsager_at_beta_c",
                      std::abs(onsager_nn_correlation(bc) - std::sqrt(0.5)), 1e-6));

  {
    const TorusLattice lattice(3);
    const GroundState gs = build_ground_state(lattice, 0.4);
    double worst = 0.0;
    for (SpinPairKind kind : {SpinPairKind::VertexSharing, SpinPairKind::PlaquetteParallel}) {
      const SpinPair p = resolve_pair(lattice, kind);
      worst = std::max(worst, quantum_discord(reduced_two_spin(gs, p.first, p.second)));
    }
    out.push_back(below("local_discord_zero_L3", worst, 1e-8));
  }

  {
    const TorusLattice lattice(3);
    const GroundState gs = build_ground_state(lattice, bc);
    const SpinRestSplit split = spin_vs_rest(gs, 0);
    const DiscordReport r = analyze_discord(spin_rest_density_matrix(split));
    const double s = von_neumann_entropy(reduced_single_spin(gs, 0));
    out.push_back(below("global_discord_equals_entropy_L3", std::abs(r.discord - s), 1e-10));
  }
  return out;
}

}  // namespace topocorr
