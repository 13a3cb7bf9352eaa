#include "topocorr/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace topocorr {

std::string_view to_string(SpinPairKind kind) {
  switch (kind) {
    case SpinPairKind::VertexSharing:
      return "vertex_sharing";
    case SpinPairKind::PlaquetteParallel:
      return "plaquette_parallel";
  }
  return "unknown";
}

SpinPairKind parse_pair_kind(std::string_view name) {
  if (name == "vertex_sharing") return SpinPairKind::VertexSharing;
  if (name == "plaquette_parallel") return SpinPairKind::PlaquetteParallel;
  throw std::invalid_argument("unknown pair kind '" + std::string(name) + "'");
}

TorusLattice::TorusLattice(int L) : L_(L) {
  if (L < 2) {
    throw std::invalid_argument("lattice size must be >= 2, got " + std::to_string(L));
  }
  const int n = L * L;
  endpoints_.resize(2 * n);
  stars_.resize(n);
  plaquettes_.resize(n);

  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const VertexId v = vertex(r, c);
      endpoints_[horizontal_edge(v)] = {v, vertex(r, c + 1)};
      endpoints_[vertical_edge(v)] = {v, vertex(r + 1, c)};
    }
  }
  for (int r = 0; r < L; ++r) {
    for (int c = 0; c < L; ++c) {
      const VertexId v = vertex(r, c);
      stars_[v] = {horizontal_edge(v), vertical_edge(v), horizontal_edge(vertex(r, c - 1)),
                   vertical_edge(vertex(r - 1, c))};
      plaquettes_[v] = {horizontal_edge(v), horizontal_edge(vertex(r + 1, c)), vertical_edge(v),
                        vertical_edge(vertex(r, c + 1))};
    }
  }

  z_loops_.reserve(2 * L);
  for (int r = 0; r < L; ++r) {
    std::vector<EdgeId> loop;
    for (int c = 0; c < L; ++c) loop.push_back(horizontal_edge(vertex(r, c)));
    z_loops_.push_back(std::move(loop));
  }
  for (int c = 0; c < L; ++c) {
    std::vector<EdgeId> loop;
    for (int r = 0; r < L; ++r) loop.push_back(vertical_edge(vertex(r, c)));
    z_loops_.push_back(std::move(loop));
  }
}

VertexId TorusLattice::vertex(int row, int col) const {
  row = ((row % L_) + L_) % L_;
  col = ((col % L_) + L_) % L_;
  return row * L_ + col;
}

const std::pair<VertexId, VertexId>& TorusLattice::endpoints(EdgeId e) const {
  if (e < 0 || e >= num_edges()) {
    throw std::out_of_range("edge index " + std::to_string(e) + " out of range");
  }
  return endpoints_[e];
}

const std::array<EdgeId, 4>& TorusLattice::star(VertexId v) const {
  if (v < 0 || v >= num_vertices()) {
    throw std::out_of_range("vertex index " + std::to_string(v) + " out of range");
  }
  return stars_[v];
}

const std::array<EdgeId, 4>& TorusLattice::plaquette(int p) const {
  if (p < 0 || p >= num_plaquettes()) {
    throw std::out_of_range("plaquette index " + std::to_string(p) + " out of range");
  }
  return plaquettes_[p];
}

namespace {

std::uint64_t mask_of(const TorusLattice& lattice, const std::array<EdgeId, 4>& edges) {
  if (lattice.num_edges() > 64) {
    throw std::length_error("edge bitmasks need at most 64 edges (L <= 5)");
  }
  std::uint64_t m = 0;
  for (EdgeId e : edges) m |= std::uint64_t{1} << e;
  return m;
}

}  // namespace

std::uint64_t TorusLattice::star_mask(VertexId v) const { return mask_of(*this, star(v)); }

std::uint64_t TorusLattice::plaquette_mask(int p) const { return mask_of(*this, plaquette(p)); }

TorusLattice build_lattice(int L) { return TorusLattice(L); }

std::vector<VertexId> edges_to_vertex_support(const TorusLattice& lattice,
                                              std::span<const EdgeId> edges) {
  std::vector<char> odd(lattice.num_vertices(), 0);
  for (EdgeId e : edges) {
    const auto& [a, b] = lattice.endpoints(e);
    odd[a] ^= 1;
    odd[b] ^= 1;
  }
  std::vector<VertexId> support;
  for (VertexId v = 0; v < lattice.num_vertices(); ++v) {
    if (odd[v]) support.push_back(v);
  }
  return support;
}

SpinPair resolve_pair(const TorusLattice& lattice, SpinPairKind kind) {
  const bool degenerate = lattice.has_doubled_bonds();
  switch (kind) {
    case SpinPairKind::VertexSharing:
      return {lattice.horizontal_edge(0), lattice.vertical_edge(0), degenerate};
    case SpinPairKind::PlaquetteParallel: {
      const auto& p = lattice.plaquette(0);
      return {p[0], p[1], degenerate};
    }
  }
  throw std::invalid_argument("unknown pair kind");
}

}  // namespace topocorr
