#include "cohtomo/fock.hpp"

#include <cmath>
#include <string>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw RangeError("total photon number must lie in [0, " +
                     std::to_string(kMaxOrder) + "], got " + std::to_string(order));
  }
}

}  // namespace

FixedNState::FixedNState(int order, Eigen::VectorXcd amplitudes)
    : order_(order), mixed_(false), amplitudes_(std::move(amplitudes)) {}

FixedNState::FixedNState(int order, Eigen::MatrixXcd density)
    : order_(order), mixed_(true), density_(std::move(density)) {}

FixedNState FixedNState::pure(int order, const Eigen::VectorXcd& amplitudes) {
  check_order(order);
  if (amplitudes.size() != order + 1) {
    throw DimensionError("amplitude vector must have length N + 1 = " +
                         std::to_string(order + 1) + ", got " +
                         std::to_string(amplitudes.size()));
  }
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    throw NormalizationError("pure state norm deviates from 1 by " +
                             std::to_string(std::abs(norm - 1.0)));
  }
  return FixedNState(order, amplitudes);
}

FixedNState FixedNState::mixed(int order, const Eigen::MatrixXcd& density) {
  check_order(order);
  if (density.rows() != order + 1 || density.cols() != order + 1) {
    throw DimensionError("density matrix must be (N+1) x (N+1)");
  }
  if ((density - density.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw SymmetryError("density matrix is not Hermitian");
  }
  const double trace = density.trace().real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw NormalizationError("density matrix trace deviates from 1 by " +
                             std::to_string(std::abs(trace - 1.0)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(density, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw NormalizationError("density matrix has an eigenvalue below -1e-10");
  }
  return FixedNState(order, density);
}

FixedNState FixedNState::mixed_unchecked(int order, const Eigen::MatrixXcd& density) {
  check_order(order);
  if (density.rows() != order + 1 || density.cols() != order + 1) {
    throw DimensionError("density matrix must be (N+1) x (N+1)");
  }
  return FixedNState(order, density);
}

const Eigen::VectorXcd& FixedNState::amplitudes() const {
  if (mixed_) {
    throw InputError("amplitudes requested from a mixed state");
  }
  return amplitudes_;
}

Eigen::MatrixXcd FixedNState::density_matrix() const {
  if (mixed_) {
    return density_;
  }
  return amplitudes_ * amplitudes_.adjoint();
}

cplx FixedNState::density_element(int m, int n) const {
  if (mixed_) {
    return density_(m, n);
  }
  return amplitudes_(m) * std::conj(amplitudes_(n));
}

std::vector<CoherenceIndex> CoherenceIndex::group(int beta, int order) {
  if (std::abs(beta) > order) {
    throw RangeError("beta out of range for order " + std::to_string(order));
  }
  std::vector<CoherenceIndex> indices;
  for (int alpha = std::abs(beta); alpha <= 2 * order - std::abs(beta); alpha += 2) {
    indices.push_back(CoherenceIndex{(alpha - beta) / 2, (alpha + beta) / 2});
  }
  return indices;
}

CoherenceTensor::CoherenceTensor(int order)
    : order_(order), values_(Eigen::MatrixXcd::Zero(order + 1, order + 1)) {
  check_order(order);
}

CoherenceTensor::CoherenceTensor(int order, Eigen::MatrixXcd values)
    : order_(order), values_(std::move(values)) {
  check_order(order);
  if (values_.rows() != order + 1 || values_.cols() != order + 1) {
    throw DimensionError("coherence tensor must be (M+1) x (M+1)");
  }
}

void CoherenceTensor::check_index(int w, int y) const {
  if (w < 0 || w > order_ || y < 0 || y > order_) {
    throw RangeError("coherence index out of range");
  }
}

cplx CoherenceTensor::at(int w, int y) const {
  check_index(w, y);
  return values_(w, y);
}

void CoherenceTensor::set(int w, int y, cplx value) {
  check_index(w, y);
  values_(w, y) = value;
}

double CoherenceTensor::hermiticity_defect() const {
  return (values_ - values_.adjoint()).cwiseAbs().maxCoeff();
}

bool CoherenceTensor::is_hermitian(double tolerance) const {
  const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
  return hermiticity_defect() <= tolerance * scale;
}

NormalizedState make_fixed_n_state(int order, const Eigen::VectorXcd& amplitudes) {
  check_order(order);
  if (amplitudes.size() != order + 1) {
    throw DimensionError("amplitude vector must have length N + 1 = " +
                         std::to_string(order + 1) + ", got " +
                         std::to_string(amplitudes.size()));
  }
  const double norm = amplitudes.norm();
  if (norm < 1e-12) {
    throw NormalizationError("amplitude vector has norm below 1e-12");
  }
  return NormalizedState{FixedNState::pure(order, amplitudes / norm), norm};
}

cplx normally_ordered_moment(const FixedNState& state, int p, int q, int r, int s) {
  if (p < 0 || q < 0 || r < 0 || s < 0) {
    throw RangeError("operator powers must be non-negative");
  }
  // The operator changes total photon number by (p + q) - (r + s); a state
  // confined to one number sector has no matrix elements across sectors.
  if (p + q != r + s) {
    return 0.0;
  }
  const int order = state.order();
  cplx sum = 0.0;
  const int lo = r;
  const int hi = std::min(order - s, order - p + r);
  for (int n = lo; n <= hi; ++n) {
    const int m = n - r + p;  // row index reached after lowering and raising
    const double weight = std::sqrt(falling_factorial(n, r)) *
                          std::sqrt(falling_factorial(order - n, s)) *
                          std::sqrt(falling_factorial(m, p)) *
                          std::sqrt(falling_factorial(order - m, q));
    sum += state.density_element(n, m) * weight;
  }
  return sum;
}

Eigen::MatrixXcd number_preserving_representation(const Eigen::Matrix2cd& unitary, int order) {
  check_order(order);
  const cplx u11 = unitary(0, 0);
  const cplx u12 = unitary(0, 1);
  const cplx u21 = unitary(1, 0);
  const cplx u22 = unitary(1, 1);

  // Powers of the four entries up to N, so each column is a plain
  // binomial double sum.
  std::vector<cplx> p11(order + 1), p12(order + 1), p21(order + 1), p22(order + 1);
  p11[0] = p12[0] = p21[0] = p22[0] = 1.0;
  for (int k = 1; k <= order; ++k) {
    p11[k] = p11[k - 1] * u11;
    p12[k] = p12[k - 1] * u12;
    p21[k] = p21[k - 1] * u21;
    p22[k] = p22[k - 1] * u22;
  }

  Eigen::MatrixXcd rep = Eigen::MatrixXcd::Zero(order + 1, order + 1);
  for (int n = 0; n <= order; ++n) {
    // Column n: (u11 a1^dag + u21 a2^dag)^n (u12 a1^dag + u22 a2^dag)^(N-n)
    // applied to the vacuum, expanded over the photon count m in mode 1.
    for (int k = 0; k <= n; ++k) {
      for (int l = 0; l <= order - n; ++l) {
        const int m = k + l;
        const double coeff = binomial(n, k) * binomial(order - n, l) *
                             std::sqrt(factorial(m) * factorial(order - m)) /
                             std::sqrt(factorial(n) * factorial(order - n));
        rep(m, n) += coeff * p11[k] * p21[n - k] * p12[l] * p22[order - n - l];
      }
    }
  }
  return rep;
}

FixedNState apply_two_mode_unitary(const FixedNState& state, const Eigen::Matrix2cd& unitary) {
  const double defect =
      (unitary.adjoint() * unitary - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    throw UnitarityError("mode transformation deviates from unitarity by " +
                         std::to_string(defect));
  }
  const Eigen::MatrixXcd rep = number_preserving_representation(unitary, state.order());
  if (state.is_mixed()) {
    return FixedNState::mixed_unchecked(state.order(),
                                        rep * state.density_matrix() * rep.adjoint());
  }
  Eigen::VectorXcd transformed = rep * state.amplitudes();
  // The representation is unitary, so renormalization only removes rounding.
  transformed /= transformed.norm();
  return FixedNState::pure(state.order(), transformed);
}

Eigen::VectorXd photon_number_distribution(const FixedNState& state) {
  const int order = state.order();
  Eigen::VectorXd probabilities(order + 1);
  for (int n = 0; n <= order; ++n) {
    probabilities(n) = state.density_element(n, n).real();
  }
  return probabilities;
}

CoherenceTensor coherence_tensor(const FixedNState& state, int order) {
  if (order < 0 || order > kMaxOrder) {
    throw RangeError("tensor order out of supported range");
  }
  CoherenceTensor tensor(order);
  for (int w = 0; w <= order; ++w) {
    for (int y = 0; y <= order; ++y) {
      tensor.set(w, y, normally_ordered_moment(state, order - w, w, order - y, y));
    }
  }
  return tensor;
}

}  // namespace cohtomo
