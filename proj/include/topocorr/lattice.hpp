#pragma once

// Geometry of the L x L torus carrying one spin per edge.
//
// Vertices are numbered row-major, v = row * L + col. Each vertex owns two
// edges: edge 2v runs horizontally to (row, col + 1) and edge 2v + 1 runs
// vertically to (row + 1, col), both with periodic wrap. Plaquette p sits
// with its top-left corner at vertex p.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace topocorr {

using VertexId = int;
using EdgeId = int;

enum class SpinPairKind {
  VertexSharing,      // two edges meeting at a common vertex
  PlaquetteParallel,  // two parallel edges of one plaquette
};

std::string_view to_string(SpinPairKind kind);
SpinPairKind parse_pair_kind(std::string_view name);

struct SpinPair {
  EdgeId first;
  EdgeId second;
  bool degenerate_geometry;  // set at L = 2 where bonds are doubled
};

class TorusLattice {
 public:
  explicit TorusLattice(int L);

  int size() const { return L_; }
  int num_vertices() const { return L_ * L_; }
  int num_edges() const { return 2 * L_ * L_; }
  int num_plaquettes() const { return L_ * L_; }

  VertexId vertex(int row, int col) const;
  int row_of(VertexId v) const { return v / L_; }
  int col_of(VertexId v) const { return v % L_; }

  EdgeId horizontal_edge(VertexId v) const { return 2 * v; }
  EdgeId vertical_edge(VertexId v) const { return 2 * v + 1; }

  const std::pair<VertexId, VertexId>& endpoints(EdgeId e) const;
  const std::array<EdgeId, 4>& star(VertexId v) const;
  const std::array<EdgeId, 4>& plaquette(int p) const;

  // L horizontal loops followed by L vertical loops.
  const std::vector<std::vector<EdgeId>>& z_loops() const { return z_loops_; }

  // Two distinct edges join the same vertex pair (only at L = 2).
  bool has_doubled_bonds() const { return L_ == 2; }

  // Bitmask over edges; requires num_edges() <= 64.
  std::uint64_t star_mask(VertexId v) const;
  std::uint64_t plaquette_mask(int p) const;

 private:
  int L_;
  std::vector<std::pair<VertexId, VertexId>> endpoints_;
  std::vector<std::array<EdgeId, 4>> stars_;
  std::vector<std::array<EdgeId, 4>> plaquettes_;
  std::vector<std::vector<EdgeId>> z_loops_;
};

TorusLattice build_lattice(int L);

// Vertices appearing an odd number of times among the endpoints of `edges`.
// A product of sigma^z over the edges equals the product of the Ising
// variables over this set. Result is sorted.
std::vector<VertexId> edges_to_vertex_support(const TorusLattice& lattice,
                                              std::span<const EdgeId> edges);

// Canonical representative: VertexSharing is the horizontal and vertical edge
// leaving vertex 0; PlaquetteParallel is the top and bottom edge of
// plaquette 0.
SpinPair resolve_pair(const TorusLattice& lattice, SpinPairKind kind);

}  // namespace topocorr
