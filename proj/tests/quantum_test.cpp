#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "topocorr/quantum.hpp"

namespace topocorr {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// (|00><00| + |++><++|) / 2
DensityMatrix zero_plus_mixture() {
  Eigen::VectorXcd zz = Eigen::VectorXcd::Zero(4);
  zz(0) = 1.0;
  Eigen::VectorXcd pp = Eigen::VectorXcd::Constant(4, 0.5);
  return DensityMatrix(0.5 * (zz * zz.adjoint() + pp * pp.adjoint()));
}

DensityMatrix bell() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = std::sqrt(0.5);
  return DensityMatrix::pure(v);
}

Eigen::MatrixXcd random_unitary(std::mt19937& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = {g(rng), g(rng)};
  return Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ();
}

DensityMatrix random_state(std::mt19937& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = {g(rng), g(rng)};
  Eigen::MatrixXcd rho = m * m.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

// --- independent oracle: closed-form 2x2 entropies on a dense grid ---

double entropy2(double a, double d, cd b) {
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
  double s = 0.0;
  for (double l : {mean + rad, mean - rad}) {
    if (l > 1e-15) s -= l * std::log2(l);
  }
  return s;
}

double oracle_conditional_entropy(const Eigen::MatrixXcd& rho, double theta, double phi) {
  const cd m0 = std::cos(theta / 2);
  const cd m1 = std::sin(theta / 2) * std::exp(cd(0, phi));
  const cd n0 = -std::conj(m1);
  const cd n1 = std::conj(m0);
  double total = 0.0;
  for (auto [u0, u1] : {std::pair{m0, m1}, std::pair{n0, n1}}) {
    // <u|_B rho |u>_B as a 2x2 block on A.
    cd block[2][2];
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) {
        const cd u[2] = {u0, u1};
        cd s = 0.0;
        for (int b = 0; b < 2; ++b)
          for (int e = 0; e < 2; ++e) s += std::conj(u[b]) * rho(2 * a + b, 2 * c + e) * u[e];
        block[a][c] = s;
      }
    }
    const double p = (block[0][0] + block[1][1]).real();
    if (p < 1e-15) continue;
    total += p * entropy2(block[0][0].real() / p, block[1][1].real() / p, block[0][1] / p);
  }
  return total;
}

double oracle_grid_discord(const DensityMatrix& rho, int n) {
  const auto& m = rho.matrix();
  double s_ab = 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  for (int k = 0; k < 4; ++k) {
    const double l = es.eigenvalues()(k);
    if (l > 1e-15) s_ab -= l * std::log2(l);
  }
  const double s_b = entropy2((m(0, 0) + m(2, 2)).real(), (m(1, 1) + m(3, 3)).real(),
                              m(0, 1) + m(2, 3));
  double best = 1e300;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      best = std::min(best, oracle_conditional_entropy(m, kPi * i / (n - 1), 2 * kPi * j / n));
    }
  }
  return s_b - s_ab + best;
}

TEST(DensityMatrix, RejectsInvalidMatrices) {
  EXPECT_THROW(DensityMatrix(Eigen::MatrixXcd::Identity(3, 3) / 3.0), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 2.0), std::invalid_argument);
  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{nonherm}, std::invalid_argument);
  Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  EXPECT_THROW(DensityMatrix{negative}, std::invalid_argument);
  Eigen::MatrixXcd rect = Eigen::MatrixXcd::Zero(2, 4);
  EXPECT_THROW(DensityMatrix{rect}, std::invalid_argument);
  EXPECT_NO_THROW(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 4.0));
}

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.9243), 0.3868436073064925, 1e-14);
  EXPECT_NEAR(binary_entropy(0.25), binary_entropy(0.75), 1e-15);
  EXPECT_THROW(binary_entropy(1.5), std::domain_error);
  EXPECT_THROW(binary_entropy(-0.01), std::domain_error);
}

TEST(Entropy, Examples) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 4.0)), 2.0,
              1e-14);
  EXPECT_NEAR(von_neumann_entropy(bell()), 0.0, 1e-12);
  Eigen::VectorXd p(2);
  p << 0.8536, 0.1464;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(p)), 0.6007574914649364, 1e-13);
  p << 0.8535533905932737, 0.1464466094067263;
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(p)), 0.6008760366928562, 1e-13);
}

TEST(Entropy, PartialTraces) {
  std::mt19937 rng(7);
  const DensityMatrix rho = random_state(rng);
  const auto& m = rho.matrix();
  const DensityMatrix a = reduce_to_first(rho);
  const DensityMatrix b = reduce_to_second(rho);
  EXPECT_NEAR(std::abs(a(0, 1) - (m(0, 2) + m(1, 3))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b(0, 1) - (m(0, 1) + m(2, 3))), 0.0, 1e-15);
  EXPECT_NEAR(a(0, 0).real(), (m(0, 0) + m(1, 1)).real(), 1e-15);
  EXPECT_NEAR(b(0, 0).real(), (m(0, 0) + m(2, 2)).real(), 1e-15);
}

TEST(MutualInformation, Examples) {
  EXPECT_NEAR(mutual_information(bell()), 2.0, 1e-12);
  EXPECT_NEAR(mutual_information(DensityMatrix(Eigen::MatrixXcd::Identity(4, 4) / 4.0)), 0.0,
              1e-14);
  Eigen::VectorXd classical(4);
  classical << 0.5, 0.0, 0.0, 0.5;
  EXPECT_NEAR(mutual_information(DensityMatrix::diagonal(classical)), 1.0, 1e-14);
  EXPECT_NEAR(mutual_information(zero_plus_mixture()), 0.3904739489265794, 1e-12);
}

TEST(ConditionalEntropy, ComputationalBasisOnClassicalState) {
  Eigen::VectorXd classical(4);
  classical << 0.5, 0.0, 0.0, 0.5;
  const DensityMatrix rho = DensityMatrix::diagonal(classical);
  EXPECT_NEAR(conditional_entropy_after_measurement(rho, {0.0, 0.0}), 0.0, 1e-14);
  EXPECT_NEAR(conditional_entropy_after_measurement(rho, {kPi / 2, 0.0}), 1.0, 1e-14);
  EXPECT_NEAR(classical_correlation(rho, {0.0, 0.0}), 1.0, 1e-14);
}

TEST(ConditionalEntropy, MatchesIndependentOracle) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, 2 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_state(rng);
    const double t = th(rng), p = ph(rng);
    EXPECT_NEAR(conditional_entropy_after_measurement(rho, {t, p}),
                oracle_conditional_entropy(rho.matrix(), t, p), 1e-12);
  }
}

TEST(Discord, PureStatesHaveConstantClassicalCorrelation) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd v(4);
    for (int k = 0; k < 4; ++k) v(k) = {g(rng), g(rng)};
    v.normalize();
    const DensityMatrix rho = DensityMatrix::pure(v);
    const double s_a = von_neumann_entropy(reduce_to_first(rho));
    double mean = 0.0, sq = 0.0;
    const int n = 32;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double jv = classical_correlation(rho, {kPi * i / (n - 1), 2 * kPi * j / n});
        mean += jv;
        sq += jv * jv;
      }
    }
    mean /= n * n;
    EXPECT_LT(sq / (n * n) - mean * mean, 1e-10);
    EXPECT_NEAR(mean, s_a, 1e-10);
    EXPECT_NEAR(quantum_discord(rho), s_a, 1e-10);
  }
}

TEST(Discord, BellStateIsOneBit) {
  const DiscordReport r = analyze_discord(bell());
  EXPECT_NEAR(r.discord, 1.0, 1e-6);
  EXPECT_NEAR(r.mutual_information, 2.0, 1e-10);
  EXPECT_NEAR(r.classical_correlation, 1.0, 1e-6);
}

TEST(Discord, ClassicalQuantumStatesHaveZeroDiscord) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXcd ub = random_unitary(rng, 2);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
    const double p0 = u(rng);
    for (int i = 0; i < 2; ++i) {
      const Eigen::MatrixXcd va = random_unitary(rng, 2).col(0);
      const Eigen::MatrixXcd vb = ub.col(i);
      Eigen::MatrixXcd proj_a = va * va.adjoint();
      const double mix = u(rng);
      proj_a = mix * proj_a + (1 - mix) * Eigen::MatrixXcd::Identity(2, 2) / 2.0;
      Eigen::MatrixXcd kron(4, 4);
      const Eigen::MatrixXcd pb = vb * vb.adjoint();
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) kron.block(2 * a, 2 * c, 2, 2) = proj_a(a, c) * pb;
      rho += (i == 0 ? p0 : 1 - p0) * kron;
    }
    EXPECT_LT(quantum_discord(DensityMatrix(rho)), 1e-8) << "trial " << trial;
  }
  Eigen::VectorXd diag(4);
  diag << 0.1, 0.2, 0.3, 0.4;
  EXPECT_LT(quantum_discord(DensityMatrix::diagonal(diag)), 1e-12);
}

TEST(Discord, ZeroPlusMixtureMatchesDenseGridOracle) {
  const DensityMatrix rho = zero_plus_mixture();
  const double oracle = oracle_grid_discord(rho, 512);
  EXPECT_NEAR(oracle, 0.1441769627801021, 1e-9);
  const DiscordReport r = analyze_discord(rho);
  EXPECT_LE(r.discord, oracle + 1e-12);
  EXPECT_NEAR(r.discord, oracle, 1e-6);
  EXPECT_NEAR(r.discord, 0.14417681489899264, 1e-9);
  EXPECT_GT(r.discord, 0.01);
  EXPECT_NEAR(r.mutual_information, 0.3904739489265794, 1e-12);
}

TEST(Discord, RefinementNeverWorseAndDiscordNonnegative) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_state(rng);
    const DiscordReport r = analyze_discord(rho);
    EXPECT_GE(r.discord, 0.0);
    EXPECT_LE(r.refined_conditional_entropy, r.grid_conditional_entropy);
    EXPECT_LE(r.discord, r.mutual_information + 1e-12);
    EXPECT_NEAR(r.classical_correlation + r.discord, r.mutual_information, 1e-9);
  }
}

TEST(Discord, RejectsSingleQubit) {
  EXPECT_THROW(quantum_discord(DensityMatrix(Eigen::MatrixXcd::Identity(2, 2) / 2.0)),
               std::invalid_argument);
}

}  // namespace
}  // namespace topocorr
