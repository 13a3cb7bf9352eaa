#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "topocorr/ising.hpp"

namespace topocorr {

namespace {

double arithmetic_geometric_mean(double a, double b) {
  for (int i = 0; i < 64; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    a = an;
    b = bn;
    if (std::abs(a - b) <= 1e-16 * a) break;
  }
  return 0.5 * (a + b);
}

// k' K(k) written through the complementary modulus k' = sqrt(1 - k^2); stays
// finite (and tends to 0) as k -> 1.
double complement_times_K(double kprime) {
  if (kprime == 0.0) return 0.0;
  return kprime * std::numbers::pi / (2.0 * arithmetic_geometric_mean(1.0, kprime));
}

}  // namespace

double elliptic_K(double k) {
  if (!(k >= 0.0) || !(k < 1.0)) {
    throw std::domain_error("elliptic_K needs 0 <= k < 1, got " + std::to_string(k));
  }
  const double kprime = std::sqrt((1.0 - k) * (1.0 + k));
  return std::numbers::pi / (2.0 * arithmetic_geometric_mean(1.0, kprime));
}

double onsager_nn_correlation(double beta) {
  if (!(beta >= 0.0)) {
    throw std::domain_error("beta must be >= 0, got " + std::to_string(beta));
  }
  if (beta == 0.0) return 0.0;
  // <t t'> = coth(2b)/2 [1 + (2/pi)(2 tanh^2(2b) - 1) K(k1)],
  // k1 = 2 sinh(2b) / cosh^2(2b). With s = sinh(2b), c = cosh(2b) one has
  // 2 tanh^2 - 1 = (s^2 - 1)/c^2 and k1' = |1 - s^2|/c^2, so the product
  // (2 tanh^2 - 1) K equals sign(s^2 - 1) k1' K(k1).
  const double s = std::sinh(2.0 * beta);
  const double c = std::cosh(2.0 * beta);
  const double gap = (s - 1.0) * (s + 1.0);
  const double kprime = std::abs(gap) / (c * c);
  const double prefactor_K = std::copysign(complement_times_K(kprime), gap);
  const double coth = c / s;
  return 0.5 * coth * (1.0 + 2.0 / std::numbers::pi * prefactor_K);
}

}  // namespace topocorr
