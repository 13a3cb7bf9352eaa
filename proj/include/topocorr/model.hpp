#pragma once

// Exact ground state of the deformed toric code on small tori, in the
// topological sector of the fully magnetised reference state.
//
// Basis states are edge bitstrings; bit e = 1 means spin e points down.

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "topocorr/ising.hpp"
#include "topocorr/lattice.hpp"
#include "topocorr/quantum.hpp"

namespace topocorr {

using Bitstring = std::uint64_t;
using SparseVector = std::unordered_map<Bitstring, double>;

inline constexpr int kMaxStateVectorL = 4;

class GroundState {
 public:
  const TorusLattice& lattice() const { return lattice_; }
  double beta() const { return beta_; }

  // log sum_{g in G} exp(beta sum_i sigma_i(g)); one less log 2 than the
  // Ising partition function, which counts each g twice.
  double log_normalizer() const { return log_normalizer_; }

  // Sorted by bitstring.
  const std::vector<std::pair<Bitstring, double>>& amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }

  // Zero outside the support.
  double amplitude(Bitstring x) const;

  friend GroundState build_ground_state(const TorusLattice& lattice, double beta);

 private:
  GroundState(TorusLattice lattice, double beta) : lattice_(std::move(lattice)), beta_(beta) {}

  TorusLattice lattice_;
  double beta_;
  double log_normalizer_ = 0.0;
  std::vector<std::pair<Bitstring, double>> amplitudes_;
};

GroundState build_ground_state(const TorusLattice& lattice, double beta);

// H|psi> for H = -l0 sum_p B_p - l1 sum_s A_s + l1 sum_s exp(-b sum_{i in s} Z_i).
// `hamiltonian_beta` defaults to the state's beta.
SparseVector apply_hamiltonian(const GroundState& state, double lambda0, double lambda1,
                               std::optional<double> hamiltonian_beta = std::nullopt);

// || H|GS> + l0 L^2 |GS> ||
double eigen_residual(const GroundState& state, double lambda0, double lambda1,
                      std::optional<double> hamiltonian_beta = std::nullopt);

enum class Pauli { I, X, Y, Z };

// Sparse tensor product of single-spin Pauli operators; absent edges carry I.
class PauliString {
 public:
  PauliString() = default;
  PauliString& set(EdgeId edge, Pauli p);
  static PauliString z_string(std::span<const EdgeId> edges);

  const std::map<EdgeId, Pauli>& factors() const { return factors_; }

 private:
  std::map<EdgeId, Pauli> factors_;
};

double expectation(const GroundState& state, const PauliString& op);

// Partial trace onto spins i (first factor) and j (second factor).
DensityMatrix reduced_two_spin(const GroundState& state, EdgeId i, EdgeId j);
DensityMatrix reduced_single_spin(const GroundState& state, EdgeId k);

// <Z_i>, <Z_j>, <Z_i Z_j> for a pair of spins.
struct PairMoments {
  double m_first;
  double m_second;
  double correlation;
};

// Diagonal state (1 + s_a m_i + s_b m_j + s_a s_b c)/4 that the loop
// symmetry leaves for any two spins.
DensityMatrix diagonal_two_spin(const PairMoments& moments);

// Moments of a canonical pair from the Ising engine. The model's Lx and Ly
// must both equal the lattice size; `method` is BruteForce or TransferMatrix.
PairMoments pair_moments_via_ising(const IsingModel& ising, const TorusLattice& lattice,
                                   SpinPairKind kind, IsingMethod method);

DensityMatrix reduced_two_spin_via_ising(const IsingModel& ising, const TorusLattice& lattice,
                                         SpinPairKind kind,
                                         IsingMethod method = IsingMethod::TransferMatrix);

// Schmidt split |GS> = a|X>|0>_k + b|Y>|1>_k.
struct SpinRestSplit {
  double a_sq;
  double b_sq;
  double overlap = 0.0;  // <X|Y>, only meaningful from a state vector
};

SpinRestSplit spin_vs_rest(const GroundState& state, EdgeId k);
// From the nearest-neighbour Ising moment of the edge's endpoints.
SpinRestSplit spin_vs_rest(double nn_moment);

// Two-qubit pure state a|00> + b|11>, first factor the rest of the lattice,
// second the spin.
DensityMatrix spin_rest_density_matrix(const SpinRestSplit& split);

struct GlobalCorrelation {
  double discord;
  double mutual_info;
};

GlobalCorrelation global_discord(double a_sq, double b_sq);

}  // namespace topocorr
