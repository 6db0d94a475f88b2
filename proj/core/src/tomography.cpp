#include "cohtomo/tomography.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

void require_hermitian(const CoherenceTensor& tensor, const char* what) {
  if (!tensor.is_hermitian()) {
    std::ostringstream message;
    message << what << " tensor is not Hermitian (defect " << tensor.hermiticity_defect()
            << ")";
    throw SymmetryError(message.str());
  }
}

// Single-particle matrices whose quadratic forms a^dag C_i a are the Stokes
// operators: identity, population difference, and the two mode-mixing terms.
const std::array<Eigen::Matrix2cd, 4>& stokes_generators() {
  static const std::array<Eigen::Matrix2cd, 4> generators = [] {
    std::array<Eigen::Matrix2cd, 4> g;
    const cplx i(0.0, 1.0);
    g[0] << 1, 0, 0, 1;
    g[1] << 1, 0, 0, -1;
    g[2] << 0, 1, 1, 0;
    g[3] << 0, -i, i, 0;
    return g;
  }();
  return generators;
}

}  // namespace

DensityResult density_from_coherences(const CoherenceTensor& tensor, bool project_psd) {
  require_hermitian(tensor, "coherence");
  const int order = tensor.order();
  const int dim = order + 1;

  Eigen::MatrixXcd rho(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      const double weight = std::sqrt(factorial(m) * factorial(order - m) * factorial(n) *
                                      factorial(order - n));
      rho(m, n) = tensor.at(order - n, order - m) / weight;
    }
  }
  rho = ((rho + rho.adjoint()) / 2.0).eval();  // exact Hermitian symmetrization

  const double trace = rho.trace().real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  const Eigen::VectorXd eigenvalues = solver.eigenvalues();
  const double min_eigenvalue = eigenvalues.minCoeff();

  std::vector<std::string> warnings;
  if (std::abs(trace - 1.0) > 0.05) {
    std::ostringstream message;
    message << "NormalizationWarning: trace " << trace << " deviates from 1 by more than 0.05";
    warnings.push_back(message.str());
  }
  if (min_eigenvalue < -1e-6) {
    std::ostringstream message;
    message << "PositivityWarning: smallest eigenvalue " << min_eigenvalue
            << " is below -1e-6";
    warnings.push_back(message.str());
  }

  bool projected = false;
  if (project_psd) {
    const Eigen::VectorXd clipped = eigenvalues.cwiseMax(0.0);
    const double clipped_trace = clipped.sum();
    if (clipped_trace <= 1e-12) {
      throw NumericalError("cannot project onto density matrices: no positive weight left");
    }
    rho = solver.eigenvectors() * (clipped / clipped_trace).asDiagonal() *
          solver.eigenvectors().adjoint();
    rho = ((rho + rho.adjoint()) / 2.0).eval();
    projected = true;
  }

  return DensityResult{FixedNState::mixed_unchecked(order, rho), trace, min_eigenvalue,
                       std::move(warnings), projected};
}

CoherenceTensor coherences_from_density(const FixedNState& state) {
  const int order = state.order();
  CoherenceTensor tensor(order);
  for (int w = 0; w <= order; ++w) {
    for (int y = 0; y <= order; ++y) {
      const double weight = std::sqrt(factorial(order - w) * factorial(w) *
                                      factorial(order - y) * factorial(y));
      tensor.set(w, y, state.density_element(order - y, order - w) * weight);
    }
  }
  return tensor;
}

StokesVector classical_stokes(cplx alpha1, cplx alpha2) {
  StokesVector s;
  s.s0 = std::norm(alpha1) + std::norm(alpha2);
  s.s1 = std::norm(alpha1) - std::norm(alpha2);
  const cplx cross = std::conj(alpha1) * alpha2;
  s.s2 = 2.0 * cross.real();
  s.s3 = 2.0 * cross.imag();
  return s;
}

StokesVector stokes_means(const CoherenceTensor& first) {
  if (first.order() != 1) {
    throw DimensionError("Stokes means need an order-1 tensor, got order " +
                         std::to_string(first.order()));
  }
  require_hermitian(first, "first-order");
  StokesVector s;
  s.s0 = first.at(0, 0).real() + first.at(1, 1).real();
  s.s1 = first.at(0, 0).real() - first.at(1, 1).real();
  s.s2 = 2.0 * first.at(0, 1).real();
  s.s3 = 2.0 * first.at(0, 1).imag();
  return s;
}

StokesCovariance stokes_variances(const CoherenceTensor& first, const CoherenceTensor& second) {
  if (first.order() != 1 || second.order() != 2) {
    throw DimensionError("Stokes variances need tensors of orders 1 and 2, got " +
                         std::to_string(first.order()) + " and " +
                         std::to_string(second.order()));
  }
  require_hermitian(first, "first-order");
  require_hermitian(second, "second-order");

  const auto& c = stokes_generators();
  const StokesVector mean = stokes_means(first);
  const std::array<double, 4> s{mean.s0, mean.s1, mean.s2, mean.s3};

  // <a_k^dag a_n> in mode indices: the tensor is indexed by mode-2 operator
  // counts, so index 1 marks mode 2.
  auto t1 = [&](int k, int n) { return first.at(k, n); };
  // <a_k^dag a_m^dag a_l a_n>: creation and annihilation pairs commute
  // within themselves, so only the mode-2 counts matter.
  auto t2 = [&](int k, int m, int l, int n) { return second.at(k + m, l + n); };

  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      // Normal ordering of S_i S_j: a_k^dag a_l a_m^dag a_n becomes
      // a_k^dag a_m^dag a_l a_n + delta_{lm} a_k^dag a_n.
      cplx value = 0.0;
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          for (int m = 0; m < 2; ++m) {
            for (int n = 0; n < 2; ++n) {
              const cplx weight =
                  0.5 * (c[i](k, l) * c[j](m, n) + c[j](k, l) * c[i](m, n));
              if (weight == 0.0) {
                continue;
              }
              value += weight * t2(k, m, l, n);
              if (l == m) {
                value += weight * t1(k, n);
              }
            }
          }
        }
      }
      const double entry = value.real() - s[static_cast<std::size_t>(i)] *
                                              s[static_cast<std::size_t>(j)];
      v(i, j) = entry;
      v(j, i) = entry;
    }
  }
  return StokesCovariance{v};
}

}  // namespace cohtomo
