#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "topocorr/ising.hpp"

namespace topocorr {

std::string_view to_string(IsingMethod method) {
  switch (method) {
    case IsingMethod::BruteForce:
      return "brute_force";
    case IsingMethod::TransferMatrix:
      return "transfer_matrix";
    case IsingMethod::Onsager:
      return "onsager";
  }
  return "unknown";
}

IsingMethod parse_ising_method(std::string_view name) {
  if (name == "brute_force") return IsingMethod::BruteForce;
  if (name == "transfer_matrix") return IsingMethod::TransferMatrix;
  if (name == "onsager") return IsingMethod::Onsager;
  throw std::invalid_argument("unknown Ising method '" + std::string(name) + "'");
}

double critical_beta() { return 0.5 * std::log(1.0 + std::sqrt(2.0)); }

VertexId IsingModel::site(int row, int col) const {
  row = ((row % Ly) + Ly) % Ly;
  col = ((col % Lx) + Lx) % Lx;
  return row * Lx + col;
}

void validate(const IsingModel& model) {
  if (model.Lx < 2 || model.Ly < 2) {
    throw std::invalid_argument("Ising torus needs Lx, Ly >= 2, got " + std::to_string(model.Lx) +
                                "x" + std::to_string(model.Ly));
  }
  if (!(model.beta >= 0.0)) {
    throw std::domain_error("beta must be >= 0, got " + std::to_string(model.beta));
  }
}

void validate_vertices(const IsingModel& model, std::span<const VertexId> vertices) {
  for (VertexId v : vertices) {
    if (v < 0 || v >= model.num_sites()) {
      throw std::out_of_range("Ising vertex " + std::to_string(v) + " outside " +
                              std::to_string(model.Lx) + "x" + std::to_string(model.Ly) +
                              " torus");
    }
  }
}

namespace {

struct Bond {
  int a;
  int b;
};

std::vector<Bond> torus_bonds(const IsingModel& m) {
  std::vector<Bond> bonds;
  for (int r = 0; r < m.Ly; ++r) {
    for (int c = 0; c < m.Lx; ++c) {
      bonds.push_back({m.site(r, c), m.site(r, c + 1)});
      bonds.push_back({m.site(r, c), m.site(r + 1, c)});
    }
  }
  return bonds;
}

// Visits every configuration with its bond energy sum E = sum t t' and
// Boltzmann factor exp(beta (E - E_max)). Bit v set means t_v = -1.
template <typename Visit>
void enumerate(const IsingModel& model, Visit&& visit) {
  validate(model);
  const int n = model.num_sites();
  if (n > kBruteForceMaxSites) {
    throw std::length_error("brute force limited to " + std::to_string(kBruteForceMaxSites) +
                            " sites, model has " + std::to_string(n));
  }
  const auto bonds = torus_bonds(model);
  const int nb = static_cast<int>(bonds.size());
  // Weight table indexed by the number of unsatisfied bonds.
  std::vector<double> weight(nb + 1);
  for (int k = 0; k <= nb; ++k) weight[k] = std::exp(-2.0 * model.beta * k);

  const std::uint32_t count = std::uint32_t{1} << n;
  for (std::uint32_t cfg = 0; cfg < count; ++cfg) {
    int broken = 0;
    for (const Bond& bd : bonds) broken += static_cast<int>(((cfg >> bd.a) ^ (cfg >> bd.b)) & 1u);
    visit(cfg, weight[broken]);
  }
}

std::uint32_t parity_mask(std::span<const VertexId> vertices) {
  std::uint32_t mask = 0;
  for (VertexId v : vertices) mask ^= std::uint32_t{1} << v;
  return mask;
}

}  // namespace

double brute_force_log_partition(const IsingModel& model) {
  double z = 0.0;
  enumerate(model, [&](std::uint32_t, double w) { z += w; });
  const double nbonds = 2.0 * model.num_sites();
  return std::log(z) + model.beta * nbonds;
}

IsingMoment brute_force_moment(const IsingModel& model, std::span<const VertexId> vertices) {
  validate(model);
  validate_vertices(model, vertices);
  if (model.num_sites() > kBruteForceMaxSites) {
    throw std::length_error("brute force limited to " + std::to_string(kBruteForceMaxSites) +
                            " sites, model has " + std::to_string(model.num_sites()));
  }
  // Repeated vertices cancel pairwise (t^2 = 1).
  const std::uint32_t mask = parity_mask(vertices);
  if (std::popcount(mask) % 2 == 1) {
    return {{vertices.begin(), vertices.end()}, IsingMethod::BruteForce, 0.0};
  }
  double z = 0.0;
  double acc = 0.0;
  enumerate(model, [&](std::uint32_t cfg, double w) {
    z += w;
    acc += (std::popcount(cfg & mask) & 1) ? -w : w;
  });
  IsingMoment out{{vertices.begin(), vertices.end()}, IsingMethod::BruteForce, acc / z};
  out.value = std::clamp(out.value, -1.0, 1.0);
  return out;
}

double brute_force_bond_fraction(const IsingModel& model, VertexId a, VertexId b, int sign) {
  const VertexId pair[] = {a, b};
  validate(model);
  validate_vertices(model, pair);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  double z = 0.0;
  double acc = 0.0;
  enumerate(model, [&](std::uint32_t cfg, double w) {
    z += w;
    const int product = (((cfg >> a) ^ (cfg >> b)) & 1u) ? -1 : 1;
    if (product == sign) acc += w;
  });
  return acc / z;
}

}  // namespace topocorr
