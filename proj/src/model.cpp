#include "topocorr/model.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace topocorr {

namespace {

Bitstring edge_bit(EdgeId e) { return Bitstring{1} << e; }

void check_edge(const TorusLattice& lattice, EdgeId e) {
  if (e < 0 || e >= lattice.num_edges()) {
    throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
  }
}

double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

// sum_i sigma_i over the edges in `mask`, sigma = +1 for bit 0.
int magnetisation(Bitstring x, Bitstring mask) {
  return std::popcount(mask) - 2 * std::popcount(x & mask);
}

}  // namespace

double GroundState::amplitude(Bitstring x) const {
  const auto it = std::lower_bound(amplitudes_.begin(), amplitudes_.end(), x,
                                   [](const auto& entry, Bitstring key) { return entry.first < key; });
  return (it != amplitudes_.end() && it->first == x) ? it->second : 0.0;
}

GroundState build_ground_state(const TorusLattice& lattice, double beta) {
  if (lattice.size() > kMaxStateVectorL) {
    throw std::length_error("state vector limited to L <= " + std::to_string(kMaxStateVectorL) +
                            ", got L = " + std::to_string(lattice.size()));
  }
  if (!(beta >= 0.0)) {
    throw std::domain_error("beta must be >= 0, got " + std::to_string(beta));
  }
  GroundState gs(lattice, beta);
  const int n = lattice.num_vertices();
  const int n_edges = lattice.num_edges();
  std::vector<Bitstring> star(n);
  for (VertexId v = 0; v < n; ++v) star[v] = lattice.star_mask(v);

  // Vertex 0 is never acted on, which removes the prod_s A_s = 1 double
  // count. Gray-code order visits every subset of the other stars once.
  const std::size_t count = std::size_t{1} << (n - 1);
  std::vector<Bitstring> states(count);
  std::vector<double> log_weight(count);
  Bitstring x = 0;
  for (std::size_t k = 0; k < count; ++k) {
    if (k > 0) x ^= star[1 + std::countr_zero(k)];
    states[k] = x;
    log_weight[k] = 0.5 * beta * (n_edges - 2 * std::popcount(x));
  }

  std::vector<double> doubled(count);
  for (std::size_t k = 0; k < count; ++k) doubled[k] = 2.0 * log_weight[k];
  gs.log_normalizer_ = log_sum_exp(doubled);

  gs.amplitudes_.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    gs.amplitudes_[k] = {states[k], std::exp(log_weight[k] - 0.5 * gs.log_normalizer_)};
  }
  std::sort(gs.amplitudes_.begin(), gs.amplitudes_.end());
  return gs;
}

SparseVector apply_hamiltonian(const GroundState& state, double lambda0, double lambda1,
                               std::optional<double> hamiltonian_beta) {
  if (!(lambda0 > 0.0) || !(lambda1 > 0.0)) {
    throw std::invalid_argument("Hamiltonian couplings must be positive");
  }
  const TorusLattice& lat = state.lattice();
  const double beta = hamiltonian_beta.value_or(state.beta());
  std::vector<Bitstring> stars(lat.num_vertices());
  std::vector<Bitstring> plaquettes(lat.num_plaquettes());
  for (int s = 0; s < lat.num_vertices(); ++s) stars[s] = lat.star_mask(s);
  for (int p = 0; p < lat.num_plaquettes(); ++p) plaquettes[p] = lat.plaquette_mask(p);

  SparseVector out;
  out.reserve(state.size() * 2);
  for (const auto& [x, psi] : state.amplitudes()) {
    double diag = 0.0;
    for (Bitstring p : plaquettes) diag -= lambda0 * ((std::popcount(x & p) & 1) ? -1.0 : 1.0);
    for (Bitstring s : stars) {
      diag += lambda1 * std::exp(-beta * magnetisation(x, s));
      out[x ^ s] -= lambda1 * psi;
    }
    out[x] += diag * psi;
  }
  return out;
}

double eigen_residual(const GroundState& state, double lambda0, double lambda1,
                      std::optional<double> hamiltonian_beta) {
  const SparseVector h_psi = apply_hamiltonian(state, lambda0, lambda1, hamiltonian_beta);
  const double shift = lambda0 * state.lattice().num_plaquettes();
  double norm_sq = 0.0;
  for (const auto& [x, value] : h_psi) {
    const double r = value + shift * state.amplitude(x);
    norm_sq += r * r;
  }
  // Support entries missing from H|psi> would also contribute.
  for (const auto& [x, psi] : state.amplitudes()) {
    if (!h_psi.contains(x)) norm_sq += shift * psi * shift * psi;
  }
  return std::sqrt(norm_sq);
}

PauliString& PauliString::set(EdgeId edge, Pauli p) {
  if (edge < 0) throw std::out_of_range("negative edge index");
  if (p == Pauli::I) {
    factors_.erase(edge);
  } else {
    factors_[edge] = p;
  }
  return *this;
}

PauliString PauliString::z_string(std::span<const EdgeId> edges) {
  PauliString out;
  for (EdgeId e : edges) {
    // Z Z = I for a repeated edge.
    if (out.factors_.contains(e)) {
      out.factors_.erase(e);
    } else {
      out.set(e, Pauli::Z);
    }
  }
  return out;
}

double expectation(const GroundState& state, const PauliString& op) {
  Bitstring flip = 0;
  Bitstring phase_mask = 0;
  int y_count = 0;
  for (const auto& [e, p] : op.factors()) {
    check_edge(state.lattice(), e);
    if (p == Pauli::X || p == Pauli::Y) flip |= edge_bit(e);
    if (p == Pauli::Z || p == Pauli::Y) phase_mask |= edge_bit(e);
    if (p == Pauli::Y) ++y_count;
  }
  // P|x> = i^{#Y} (-1)^{x . phase_mask} |x ^ flip>
  double sum = 0.0;
  for (const auto& [x, psi] : state.amplitudes()) {
    const double partner = flip == 0 ? psi : state.amplitude(x ^ flip);
    if (partner == 0.0) continue;
    sum += ((std::popcount(x & phase_mask) & 1) ? -1.0 : 1.0) * partner * psi;
  }
  switch (y_count % 4) {
    case 0:
      return sum;
    case 2:
      return -sum;
    default:
      return 0.0;  // purely imaginary for real amplitudes
  }
}

DensityMatrix reduced_two_spin(const GroundState& state, EdgeId i, EdgeId j) {
  check_edge(state.lattice(), i);
  check_edge(state.lattice(), j);
  if (i == j) throw std::invalid_argument("reduced_two_spin needs two distinct edges");
  const Bitstring bi = edge_bit(i);
  const Bitstring bj = edge_bit(j);
  std::map<Bitstring, std::array<double, 4>> rest;
  for (const auto& [x, psi] : state.amplitudes()) {
    const int idx = 2 * static_cast<int>((x & bi) != 0) + static_cast<int>((x & bj) != 0);
    rest[x & ~(bi | bj)][idx] += psi;
  }
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  for (const auto& [key, v] : rest) {
    const Eigen::Map<const Eigen::Vector4d> col(v.data());
    rho += col * col.transpose();
  }
  return DensityMatrix(rho.cast<std::complex<double>>());
}

DensityMatrix reduced_single_spin(const GroundState& state, EdgeId k) {
  check_edge(state.lattice(), k);
  const Bitstring bk = edge_bit(k);
  std::map<Bitstring, std::array<double, 2>> rest;
  for (const auto& [x, psi] : state.amplitudes()) {
    rest[x & ~bk][(x & bk) ? 1 : 0] += psi;
  }
  Eigen::Matrix2d rho = Eigen::Matrix2d::Zero();
  for (const auto& [key, v] : rest) {
    const Eigen::Map<const Eigen::Vector2d> col(v.data());
    rho += col * col.transpose();
  }
  return DensityMatrix(rho.cast<std::complex<double>>());
}

DensityMatrix diagonal_two_spin(const PairMoments& m) {
  Eigen::Vector4d p;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double sa = a == 0 ? 1.0 : -1.0;
      const double sb = b == 0 ? 1.0 : -1.0;
      p[2 * a + b] = 0.25 * (1.0 + sa * m.m_first + sb * m.m_second + sa * sb * m.correlation);
    }
  }
  // Rounding can leave -1e-17 on an empty outcome.
  p = p.cwiseMax(0.0);
  p /= p.sum();
  return DensityMatrix::diagonal(p);
}

PairMoments pair_moments_via_ising(const IsingModel& ising, const TorusLattice& lattice,
                                   SpinPairKind kind, IsingMethod method) {
  if (ising.Lx != lattice.size() || ising.Ly != lattice.size()) {
    throw std::invalid_argument("Ising torus " + std::to_string(ising.Lx) + "x" +
                                std::to_string(ising.Ly) + " does not match lattice L = " +
                                std::to_string(lattice.size()));
  }
  const SpinPair pair = resolve_pair(lattice, kind);
  const EdgeId both[] = {pair.first, pair.second};
  const auto& e1 = lattice.endpoints(pair.first);
  const auto& e2 = lattice.endpoints(pair.second);
  const std::vector<std::vector<VertexId>> sets = {
      {e1.first, e1.second}, {e2.first, e2.second}, edges_to_vertex_support(lattice, both)};

  std::vector<double> values;
  switch (method) {
    case IsingMethod::BruteForce:
      for (const auto& s : sets) values.push_back(brute_force_moment(ising, s).value);
      break;
    case IsingMethod::TransferMatrix:
      values = transfer_matrix_moments(ising, sets).moments;
      break;
    case IsingMethod::Onsager:
      throw std::invalid_argument(
          "the closed form covers only the nearest-neighbour moment; use a finite-lattice method "
          "for pair states");
  }
  return {values[0], values[1], values[2]};
}

DensityMatrix reduced_two_spin_via_ising(const IsingModel& ising, const TorusLattice& lattice,
                                         SpinPairKind kind, IsingMethod method) {
  return diagonal_two_spin(pair_moments_via_ising(ising, lattice, kind, method));
}

SpinRestSplit spin_vs_rest(const GroundState& state, EdgeId k) {
  check_edge(state.lattice(), k);
  const Bitstring bk = edge_bit(k);
  SpinRestSplit split{0.0, 0.0, 0.0};
  double cross = 0.0;
  for (const auto& [x, psi] : state.amplitudes()) {
    if (x & bk) {
      split.b_sq += psi * psi;
    } else {
      split.a_sq += psi * psi;
      cross += psi * state.amplitude(x ^ bk);
    }
  }
  const double ab = std::sqrt(split.a_sq * split.b_sq);
  split.overlap = ab > 0.0 ? cross / ab : 0.0;
  return split;
}

SpinRestSplit spin_vs_rest(double nn_moment) {
  if (!(std::abs(nn_moment) <= 1.0)) {
    throw std::domain_error("nearest-neighbour moment must lie in [-1, 1], got " +
                            std::to_string(nn_moment));
  }
  return {0.5 * (1.0 + nn_moment), 0.5 * (1.0 - nn_moment), 0.0};
}

DensityMatrix spin_rest_density_matrix(const SpinRestSplit& split) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi[0] = std::sqrt(split.a_sq);
  psi[3] = std::sqrt(split.b_sq);
  return DensityMatrix::pure(psi);
}

GlobalCorrelation global_discord(double a_sq, double b_sq) {
  if (a_sq < 0.0 || b_sq < 0.0) {
    throw std::domain_error("Schmidt weights must be nonnegative");
  }
  if (std::abs(a_sq + b_sq - 1.0) > 1e-9) {
    throw std::invalid_argument("Schmidt weights must sum to 1, got " +
                                std::to_string(a_sq + b_sq));
  }
  auto term = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  const double s = term(a_sq) + term(b_sq);
  return {s, 2.0 * s};
}

}  // namespace topocorr
