#include "topocorr/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace topocorr {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || (m_.rows() != 2 && m_.rows() != 4)) {
    throw std::invalid_argument("density matrix must be 2x2 or 4x4, got " +
                                std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw std::invalid_argument("density matrix not Hermitian (deviation " +
                                std::to_string(asym) + ")");
  }
  const std::complex<double> tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  // Symmetrise away the sub-tolerance asymmetry before the eigen check.
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenFloor) {
    throw std::invalid_argument("density matrix has negative eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::diagonal(const Eigen::VectorXd& probabilities) {
  return DensityMatrix(probabilities.cast<std::complex<double>>().asDiagonal().toDenseMatrix());
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& amplitudes) {
  const Eigen::VectorXcd psi = amplitudes.normalized();
  return DensityMatrix(psi * psi.adjoint());
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy needs p in [0, 1], got " + std::to_string(p));
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace {

double entropy_of(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : es.eigenvalues()) {
    if (lambda > kEntropyEigenFloor) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

void require_two_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("two-qubit operation needs a 4x4 density matrix, got dim " +
                                std::to_string(rho.dim()));
  }
}

// Unnormalised state of A after projecting B onto |v>.
Eigen::Matrix2cd project_second(const Eigen::MatrixXcd& rho, const Eigen::Vector2cd& v) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      std::complex<double> acc = 0.0;
      for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
          acc += std::conj(v[b]) * rho(2 * a + b, 2 * ap + bp) * v[bp];
        }
      }
      out(a, ap) = acc;
    }
  }
  return out;
}

std::array<Eigen::Vector2cd, 2> measurement_vectors(const MeasurementBasis& basis) {
  const double c = std::cos(0.5 * basis.theta);
  const double s = std::sin(0.5 * basis.theta);
  const std::complex<double> phase = std::polar(1.0, basis.phi);
  Eigen::Vector2cd up(c, s * phase);
  Eigen::Vector2cd down(-s * std::conj(phase), c);
  return {up, down};
}

struct Point {
  double theta;
  double phi;
  double value;
};

// Nelder-Mead on the two Bloch angles.
Point refine(const DensityMatrix& rho, Point start, double step, const DiscordOptions& opt) {
  auto f = [&](double t, double p) {
    return conditional_entropy_after_measurement(rho, {t, p});
  };
  std::array<Point, 3> simplex{start, Point{start.theta + step, start.phi, 0.0},
                               Point{start.theta, start.phi + step, 0.0}};
  for (int i = 1; i < 3; ++i) simplex[i].value = f(simplex[i].theta, simplex[i].phi);

  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.value < b.value; });
    const double spread = simplex[2].value - simplex[0].value;
    const double size = std::max(std::abs(simplex[2].theta - simplex[0].theta) +
                                     std::abs(simplex[2].phi - simplex[0].phi),
                                 std::abs(simplex[1].theta - simplex[0].theta) +
                                     std::abs(simplex[1].phi - simplex[0].phi));
    if (spread < opt.tolerance && size < 1e-6) break;

    const double ct = 0.5 * (simplex[0].theta + simplex[1].theta);
    const double cp = 0.5 * (simplex[0].phi + simplex[1].phi);
    auto along = [&](double scale) {
      const double t = ct + scale * (simplex[2].theta - ct);
      const double p = cp + scale * (simplex[2].phi - cp);
      return Point{t, p, f(t, p)};
    };
    const Point reflected = along(-1.0);
    if (reflected.value < simplex[0].value) {
      const Point expanded = along(-2.0);
      simplex[2] = expanded.value < reflected.value ? expanded : reflected;
    } else if (reflected.value < simplex[1].value) {
      simplex[2] = reflected;
    } else {
      const Point contracted =
          reflected.value < simplex[2].value ? along(-0.5) : along(0.5);
      if (contracted.value < std::min(reflected.value, simplex[2].value)) {
        simplex[2] = contracted;
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i].theta = 0.5 * (simplex[i].theta + simplex[0].theta);
          simplex[i].phi = 0.5 * (simplex[i].phi + simplex[0].phi);
          simplex[i].value = f(simplex[i].theta, simplex[i].phi);
        }
      }
    }
  }
  return *std::min_element(simplex.begin(), simplex.end(),
                           [](const Point& a, const Point& b) { return a.value < b.value; });
}

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of(rho.matrix()); }

DensityMatrix reduce_to_first(const DensityMatrix& rho_ab) {
  require_two_qubit(rho_ab);
  const auto& m = rho_ab.matrix();
  Eigen::MatrixXcd out(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) out(a, ap) = m(2 * a, 2 * ap) + m(2 * a + 1, 2 * ap + 1);
  }
  return DensityMatrix(out);
}

DensityMatrix reduce_to_second(const DensityMatrix& rho_ab) {
  require_two_qubit(rho_ab);
  const auto& m = rho_ab.matrix();
  Eigen::MatrixXcd out(2, 2);
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) out(b, bp) = m(b, bp) + m(2 + b, 2 + bp);
  }
  return DensityMatrix(out);
}

double mutual_information(const DensityMatrix& rho_ab) {
  require_two_qubit(rho_ab);
  const double mi = von_neumann_entropy(reduce_to_first(rho_ab)) +
                    von_neumann_entropy(reduce_to_second(rho_ab)) - von_neumann_entropy(rho_ab);
  return std::max(mi, 0.0);
}

double conditional_entropy_after_measurement(const DensityMatrix& rho_ab,
                                             const MeasurementBasis& basis) {
  require_two_qubit(rho_ab);
  double total = 0.0;
  for (const auto& v : measurement_vectors(basis)) {
    const Eigen::Matrix2cd block = project_second(rho_ab.matrix(), v);
    const double p = block.trace().real();
    if (p <= kEntropyEigenFloor) continue;
    total += p * entropy_of(block / p);
  }
  return total;
}

double classical_correlation(const DensityMatrix& rho_ab, const MeasurementBasis& basis) {
  return von_neumann_entropy(reduce_to_first(rho_ab)) -
         conditional_entropy_after_measurement(rho_ab, basis);
}

DiscordReport analyze_discord(const DensityMatrix& rho_ab, const DiscordOptions& options) {
  require_two_qubit(rho_ab);
  if (options.theta_steps < 2 || options.phi_steps < 1 || options.refine_starts < 1) {
    throw std::invalid_argument("discord grid needs theta_steps >= 2, phi_steps >= 1");
  }
  const double pi = std::numbers::pi;
  const double dtheta = pi / (options.theta_steps - 1);
  const double dphi = 2.0 * pi / options.phi_steps;

  std::vector<Point> grid;
  grid.reserve(static_cast<std::size_t>(options.theta_steps) * options.phi_steps);
  for (int i = 0; i < options.theta_steps; ++i) {
    for (int j = 0; j < options.phi_steps; ++j) {
      const double t = i * dtheta;
      const double p = j * dphi;
      grid.push_back({t, p, conditional_entropy_after_measurement(rho_ab, {t, p})});
    }
  }
  // Stable ordering keeps the seed points deterministic under ties.
  const int starts = std::min<int>(options.refine_starts, static_cast<int>(grid.size()));
  std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                    [](const Point& a, const Point& b) {
                      if (a.value != b.value) return a.value < b.value;
                      if (a.theta != b.theta) return a.theta < b.theta;
                      return a.phi < b.phi;
                    });

  Point best = grid.front();
  const double grid_best = best.value;
  for (int k = 0; k < starts; ++k) {
    const Point refined = refine(rho_ab, grid[k], 0.5 * std::min(dtheta, dphi), options);
    if (refined.value < best.value) best = refined;
  }

  DiscordReport report{};
  report.entropy_a = von_neumann_entropy(reduce_to_first(rho_ab));
  report.mutual_information = mutual_information(rho_ab);
  report.grid_conditional_entropy = grid_best;
  report.refined_conditional_entropy = best.value;
  report.best_basis = {best.theta, best.phi};
  report.classical_correlation = report.entropy_a - best.value;
  report.discord = std::max(report.mutual_information - report.classical_correlation, 0.0);
  return report;
}

double quantum_discord(const DensityMatrix& rho_ab) { return analyze_discord(rho_ab).discord; }

}  // namespace topocorr
