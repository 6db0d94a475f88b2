#ifndef COHTOMO_EXPANSION_HPP
#define COHTOMO_EXPANSION_HPP

#include <Eigen/Dense>

#include "cohtomo/fock.hpp"
#include "cohtomo/gadget.hpp"

namespace cohtomo {

/// Which order-N cross correlation of the gadget's output ports is being
/// expanded: <b1^dag^i b2^dag^(N-i) b1^i b2^(N-i)> with 0 <= i <= N.
struct CorrelationSpec {
  int order = 0;        // N
  int port1_order = 0;  // i

  CorrelationSpec(int order, int port1_order);
};

/// Coefficient of each input-mode coherence in the expansion of the output
/// correlation at the given setting.  Entry (w, y) multiplies tensor entry
/// (w, y); the table has the same (N+1) x (N+1) layout as CoherenceTensor.
/// For i = N every coherence appears exactly once with coefficient
///   C(N,w) C(N,y) cos^(2N-w-y)(theta) sin^(w+y)(theta) e^{i phi (y - w)}.
Eigen::MatrixXcd correlation_coefficients(const CorrelationSpec& spec,
                                          const MeasurementSetting& setting);

/// Exact value of <b1^dag^N b1^N> behind the gadget for a state with the
/// given order-N coherence tensor.  Throws SymmetryError when the tensor is
/// not Hermitian; the imaginary residual of the sum (rounding only, below
/// 1e-10 relative) is discarded.
double predicted_moment(const CoherenceTensor& tensor, const MeasurementSetting& setting);

}  // namespace cohtomo

#endif  // COHTOMO_EXPANSION_HPP
