#pragma once

// Exact 2D classical Ising engine on an Lx x Ly torus, H = -sum_<ss'> t_s t_s'.
//
// Vertex v = row * Lx + col, bonds run to (row, col + 1) and (row + 1, col)
// with periodic wrap, so for Lx = Ly = L the bonds coincide with the edges of
// TorusLattice (including the doubled bonds at L = 2).

#include <span>
#include <string_view>
#include <vector>

#include "topocorr/lattice.hpp"

namespace topocorr {

enum class IsingMethod { BruteForce, TransferMatrix, Onsager };

std::string_view to_string(IsingMethod method);
IsingMethod parse_ising_method(std::string_view name);

struct IsingModel {
  int Lx;
  int Ly;
  double beta;

  int num_sites() const { return Lx * Ly; }
  VertexId site(int row, int col) const;
};

struct IsingMoment {
  std::vector<VertexId> vertex_set;
  IsingMethod method;
  double value;
  double error_bound = 0.0;
  bool finite_size = false;  // finite torus standing in for the infinite lattice
};

inline constexpr int kBruteForceMaxSites = 20;
inline constexpr int kTransferMaxWidth = 16;
inline constexpr int kTransferMaxArity = 6;

// Critical coupling 1/2 ln(1 + sqrt 2).
double critical_beta();

// Rejects beta < 0, sizes < 2, and vertex ids outside the torus.
void validate(const IsingModel& model);
void validate_vertices(const IsingModel& model, std::span<const VertexId> vertices);

// Enumeration of all 2^(Lx Ly) configurations. Ground truth for the other
// methods.
double brute_force_log_partition(const IsingModel& model);
IsingMoment brute_force_moment(const IsingModel& model, std::span<const VertexId> vertices);

// Statistical weight of configurations with t_a t_b == sign (+1 or -1),
// divided by Z.
double brute_force_bond_fraction(const IsingModel& model, VertexId a, VertexId b, int sign);

// Row-to-row transfer matrix of dimension 2^Lx, contracted around the torus.
double transfer_matrix_log_partition(const IsingModel& model);
IsingMoment transfer_matrix_moment(const IsingModel& model, std::span<const VertexId> vertices);

struct TransferBatch {
  double log_partition;
  std::vector<double> moments;  // same order as the requested vertex sets
};

// Evaluates several moments in one contraction; much cheaper than separate
// calls since the expensive matrix power is shared.
TransferBatch transfer_matrix_moments(const IsingModel& model,
                                      std::span<const std::vector<VertexId>> vertex_sets);

// Complete elliptic integral of the first kind for modulus k in [0, 1).
double elliptic_K(double k);

// Infinite-lattice nearest-neighbour correlation <t_s t_s'>.
double onsager_nn_correlation(double beta);

}  // namespace topocorr
