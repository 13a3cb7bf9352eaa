#pragma once

// Two-qubit information toolkit: entropies, mutual information and quantum
// discord with projective measurements on the second tensor factor.
//
// All entropies are in bits.

#include <Eigen/Dense>

namespace topocorr {

// Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4.
// For dimension 4 the basis index is 2 a + b with a the first factor (A)
// and b the second (B, the measured side).
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenFloor = -1e-10;

  // Throws std::invalid_argument if any invariant fails.
  explicit DensityMatrix(Eigen::MatrixXcd m);

  static DensityMatrix diagonal(const Eigen::VectorXd& probabilities);
  static DensityMatrix pure(const Eigen::VectorXcd& amplitudes);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }
  std::complex<double> operator()(int r, int c) const { return m_(r, c); }

 private:
  Eigen::MatrixXcd m_;
};

// Bloch angles of the measurement direction on B; theta = 0 measures in the
// computational basis.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
};

inline constexpr double kEntropyEigenFloor = 1e-14;

double binary_entropy(double p);
double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix reduce_to_first(const DensityMatrix& rho_ab);
DensityMatrix reduce_to_second(const DensityMatrix& rho_ab);

double mutual_information(const DensityMatrix& rho_ab);

// sum_i p_i S(rho_i), rho_i the state of A after outcome i on B.
double conditional_entropy_after_measurement(const DensityMatrix& rho_ab,
                                             const MeasurementBasis& basis);

// J = S(A) - sum_i p_i S(rho_i) for one measurement.
double classical_correlation(const DensityMatrix& rho_ab, const MeasurementBasis& basis);

struct DiscordOptions {
  int theta_steps = 64;
  int phi_steps = 64;
  int refine_starts = 3;
  double tolerance = 1e-10;
  int max_iterations = 2000;
};

struct DiscordReport {
  double discord;
  double mutual_information;
  double classical_correlation;  // max over measurements
  double entropy_a;
  MeasurementBasis best_basis;
  double grid_conditional_entropy;     // best value seen on the grid
  double refined_conditional_entropy;  // never above the grid value
};

DiscordReport analyze_discord(const DensityMatrix& rho_ab, const DiscordOptions& options = {});
double quantum_discord(const DensityMatrix& rho_ab);

}  // namespace topocorr
