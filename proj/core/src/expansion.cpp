#include "cohtomo/expansion.hpp"

#include <cmath>
#include <string>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

// cos^(2N - alpha)(theta) sin^alpha(theta) for alpha = 0..2N.
std::vector<double> trig_monomials(int order, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  std::vector<double> cpow(2 * order + 1, 1.0), spow(2 * order + 1, 1.0);
  for (int k = 1; k <= 2 * order; ++k) {
    cpow[k] = cpow[k - 1] * c;
    spow[k] = spow[k - 1] * s;
  }
  std::vector<double> mono(2 * order + 1);
  for (int alpha = 0; alpha <= 2 * order; ++alpha) {
    mono[alpha] = cpow[2 * order - alpha] * spow[alpha];
  }
  return mono;
}

}  // namespace

CorrelationSpec::CorrelationSpec(int order_in, int port1_order_in)
    : order(order_in), port1_order(port1_order_in) {
  if (order < 0 || order > kMaxOrder) {
    throw RangeError("correlation order out of supported range");
  }
  if (port1_order < 0 || port1_order > order) {
    throw RangeError("port-1 order must lie in [0, N], got " +
                     std::to_string(port1_order));
  }
}

Eigen::MatrixXcd correlation_coefficients(const CorrelationSpec& spec,
                                          const MeasurementSetting& setting) {
  const int n = spec.order;
  const int i = spec.port1_order;
  const auto mono = trig_monomials(n, setting.theta());

  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  // Four binomial expansions: (w, y) from the port-1 operators, (x, z) from
  // the port-2 operators.  The coherence hit by one term has a2^dag power
  // N - i - x + w and a2 power N - i - z + y.
  for (int w = 0; w <= i; ++w) {
    for (int y = 0; y <= i; ++y) {
      for (int x = 0; x <= n - i; ++x) {
        for (int z = 0; z <= n - i; ++z) {
          const int alpha = w + x + y + z;
          const double sign = ((x + z) % 2 == 0) ? 1.0 : -1.0;
          const double magnitude = binomial(i, w) * binomial(i, y) *
                                   binomial(n - i, x) * binomial(n - i, z) *
                                   mono[alpha] * sign;
          const cplx phase = std::polar(1.0, setting.phi() * (x + y - w - z));
          coeffs(n - i - x + w, n - i - z + y) += magnitude * phase;
        }
      }
    }
  }
  return coeffs;
}

double predicted_moment(const CoherenceTensor& tensor, const MeasurementSetting& setting) {
  if (!tensor.is_hermitian()) {
    throw SymmetryError("coherence tensor is not Hermitian; defect " +
                        std::to_string(tensor.hermiticity_defect()));
  }
  const int n = tensor.order();
  const auto mono = trig_monomials(n, setting.theta());

  cplx sum = 0.0;
  for (int w = 0; w <= n; ++w) {
    for (int y = 0; y <= n; ++y) {
      const double magnitude = binomial(n, w) * binomial(n, y) * mono[w + y];
      const cplx phase = std::polar(1.0, setting.phi() * (y - w));
      sum += magnitude * phase * tensor.at(w, y);
    }
  }
  // Hermitian input pairs each term with its conjugate; what remains in the
  // imaginary part is rounding noise.
  return sum.real();
}

}  // namespace cohtomo
