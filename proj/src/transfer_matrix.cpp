#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "topocorr/ising.hpp"

namespace topocorr {

namespace {

using State = std::uint32_t;

// Row-to-row transfer matrix T(s, t) = exp(b [h(s)/2 + h(t)/2 + v(s, t)])
// for rows of `width` spins, stored rescaled by exp(-2 b width) so every
// entry lies in (0, 1].
class RowTransfer {
 public:
  RowTransfer(int width, double beta) : width_(width), dim_(State{1} << width) {
    const State full = dim_ - 1;
    half_row_.resize(dim_);
    for (State s = 0; s < dim_; ++s) {
      const State rotated = ((s >> 1) | (s << (width - 1))) & full;
      half_row_[s] = std::exp(-beta * std::popcount(s ^ rotated));
    }
    vertical_ = std::exp(-2.0 * beta);
    vertical_pow_.resize(width + 1);
    for (int k = 0; k <= width; ++k) vertical_pow_[k] = std::exp(-2.0 * beta * k);
  }

  int width() const { return width_; }
  State dim() const { return dim_; }

  double element(State s, State t) const {
    return half_row_[s] * half_row_[t] * vertical_pow_[std::popcount(s ^ t)];
  }

  // v <- T v
  void apply(std::vector<double>& v) const {
    for (State s = 0; s < dim_; ++s) v[s] *= half_row_[s];
    for (int c = 0; c < width_; ++c) {
      const State bit = State{1} << c;
      for (State s = 0; s < dim_; ++s) {
        if (s & bit) continue;
        const double a = v[s];
        const double b = v[s | bit];
        v[s] = a + vertical_ * b;
        v[s | bit] = b + vertical_ * a;
      }
    }
    for (State s = 0; s < dim_; ++s) v[s] *= half_row_[s];
  }

 private:
  int width_;
  State dim_;
  std::vector<double> half_row_;
  double vertical_ = 1.0;
  std::vector<double> vertical_pow_;
};

// Column translations combined with the global spin flip. T is invariant
// under every element, which lets the trace be assembled from one column of
// the matrix power per orbit.
class RowSymmetry {
 public:
  explicit RowSymmetry(int width) : width_(width), full_((State{1} << width) - 1) {}

  int order() const { return 2 * width_; }

  State act(int g, State s) const {
    const int k = g % width_;
    const State r = k == 0 ? s : (((s << k) | (s >> (width_ - k))) & full_);
    return g >= width_ ? r ^ full_ : r;
  }

  int inverse(int g) const {
    const int k = g % width_;
    const int inv_k = (width_ - k) % width_;
    return g >= width_ ? inv_k + width_ : inv_k;
  }

 private:
  int width_;
  State full_;
};

// A moment request reduced to per-row column masks, rows relative to a shift
// chosen so the occupied rows span as few transfer steps as possible.
struct RowInsertion {
  std::vector<State> row_masks;  // index 0 .. span
  bool vanishes = false;         // odd number of spins
};

RowInsertion plan_insertion(const IsingModel& model, std::span<const VertexId> vertices) {
  std::vector<State> masks(model.Ly, 0);
  int parity = 0;
  for (VertexId v : vertices) {
    masks[v / model.Lx] ^= State{1} << (v % model.Lx);
  }
  std::vector<int> occupied;
  for (int r = 0; r < model.Ly; ++r) {
    if (masks[r]) {
      occupied.push_back(r);
      parity += std::popcount(masks[r]);
    }
  }
  RowInsertion plan;
  if (parity % 2 == 1) {
    plan.vanishes = true;
    return plan;
  }
  if (occupied.empty()) {
    plan.row_masks = {0};
    return plan;
  }
  int best_start = occupied.front();
  int best_span = std::numeric_limits<int>::max();
  for (int start : occupied) {
    int span = 0;
    for (int r : occupied) span = std::max(span, ((r - start) % model.Ly + model.Ly) % model.Ly);
    if (span < best_span) {
      best_span = span;
      best_start = start;
    }
  }
  plan.row_masks.assign(best_span + 1, 0);
  for (int r : occupied) {
    plan.row_masks[((r - best_start) % model.Ly + model.Ly) % model.Ly] = masks[r];
  }
  return plan;
}

double parity_sign(State s, State mask) { return (std::popcount(s & mask) & 1) ? -1.0 : 1.0; }

}  // namespace

TransferBatch transfer_matrix_moments(const IsingModel& model,
                                      std::span<const std::vector<VertexId>> vertex_sets) {
  validate(model);
  if (model.Lx > kTransferMaxWidth) {
    throw std::length_error("transfer matrix limited to width " +
                            std::to_string(kTransferMaxWidth) + ", model has Lx = " +
                            std::to_string(model.Lx));
  }
  std::vector<RowInsertion> plans;
  // The partition function rides along as the empty insertion.
  plans.push_back(RowInsertion{{0}, false});
  for (const auto& set : vertex_sets) {
    validate_vertices(model, set);
    if (static_cast<int>(set.size()) > kTransferMaxArity) {
      throw std::invalid_argument("transfer matrix supports vertex sets of at most " +
                                  std::to_string(kTransferMaxArity) + " sites, got " +
                                  std::to_string(set.size()));
    }
    plans.push_back(plan_insertion(model, set));
  }

  int depth = 1;
  for (const auto& p : plans) {
    if (!p.vanishes) depth = std::max(depth, static_cast<int>(p.row_masks.size()) - 1);
  }
  for (auto& p : plans) p.row_masks.resize(depth + 1, 0);

  const RowTransfer transfer(model.Lx, model.beta);
  const RowSymmetry symmetry(model.Lx);
  const State dim = transfer.dim();
  const int right_steps = model.Ly - depth;

  std::vector<std::vector<State>> inverse_perm(symmetry.order(), std::vector<State>(dim));
  for (int g = 0; g < symmetry.order(); ++g) {
    const int gi = symmetry.inverse(g);
    for (State s = 0; s < dim; ++s) inverse_perm[g][s] = symmetry.act(gi, s);
  }

  const std::size_t n_obs = plans.size();
  std::vector<double> log_scales;
  std::vector<std::vector<double>> partials;  // [orbit][observable]

  std::vector<double> column(dim);
  std::vector<double> permuted(dim);
  std::vector<double> left(dim);
  std::vector<State> orbit;
  std::vector<int> orbit_g;

  for (State s = 0; s < dim; ++s) {
    bool representative = true;
    for (int g = 1; g < symmetry.order() && representative; ++g) {
      if (symmetry.act(g, s) < s) representative = false;
    }
    if (!representative) continue;

    // column <- T^right_steps e_s, renormalised each step.
    std::fill(column.begin(), column.end(), 0.0);
    column[s] = 1.0;
    double log_scale = 0.0;
    for (int step = 0; step < right_steps; ++step) {
      transfer.apply(column);
      const double peak = *std::max_element(column.begin(), column.end());
      for (double& x : column) x /= peak;
      log_scale += std::log(peak);
    }

    orbit.clear();
    orbit_g.clear();
    for (int g = 0; g < symmetry.order(); ++g) {
      const State u = symmetry.act(g, s);
      if (std::find(orbit.begin(), orbit.end(), u) == orbit.end()) {
        orbit.push_back(u);
        orbit_g.push_back(g);
      }
    }

    std::vector<double> partial(n_obs, 0.0);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      const State u = orbit[k];
      // Invariance gives T^m(t, u) = T^m(g^-1 t, s) for u = g s.
      const auto& perm = inverse_perm[orbit_g[k]];
      for (State t = 0; t < dim; ++t) permuted[t] = column[perm[t]];

      for (std::size_t o = 0; o < n_obs; ++o) {
        const RowInsertion& plan = plans[o];
        if (plan.vanishes) continue;
        const double head = parity_sign(u, plan.row_masks[0]);
        // left <- D_depth T ... D_1 T D_0 e_u
        for (State t = 0; t < dim; ++t) left[t] = head * transfer.element(u, t);
        for (int r = 1; r < depth; ++r) {
          for (State t = 0; t < dim; ++t) left[t] *= parity_sign(t, plan.row_masks[r]);
          transfer.apply(left);
        }
        const State tail = plan.row_masks[depth];
        double acc = 0.0;
        if (tail == 0) {
          for (State t = 0; t < dim; ++t) acc += left[t] * permuted[t];
        } else {
          for (State t = 0; t < dim; ++t) acc += parity_sign(t, tail) * left[t] * permuted[t];
        }
        partial[o] += acc;
      }
    }
    log_scales.push_back(log_scale);
    partials.push_back(std::move(partial));
  }

  const double max_scale = *std::max_element(log_scales.begin(), log_scales.end());
  std::vector<double> totals(n_obs, 0.0);
  for (std::size_t i = 0; i < partials.size(); ++i) {
    const double f = std::exp(log_scales[i] - max_scale);
    for (std::size_t o = 0; o < n_obs; ++o) totals[o] += f * partials[i][o];
  }

  TransferBatch out;
  out.log_partition = std::log(totals[0]) + max_scale + 2.0 * model.beta * model.Lx * model.Ly;
  out.moments.reserve(n_obs - 1);
  for (std::size_t o = 1; o < n_obs; ++o) {
    const double m = plans[o].vanishes ? 0.0 : totals[o] / totals[0];
    out.moments.push_back(std::clamp(m, -1.0, 1.0));
  }
  return out;
}

double transfer_matrix_log_partition(const IsingModel& model) {
  return transfer_matrix_moments(model, {}).log_partition;
}

IsingMoment transfer_matrix_moment(const IsingModel& model, std::span<const VertexId> vertices) {
  const std::vector<VertexId> set(vertices.begin(), vertices.end());
  const auto batch = transfer_matrix_moments(model, std::span(&set, 1));
  return {set, IsingMethod::TransferMatrix, batch.moments.front()};
}

}  // namespace topocorr
