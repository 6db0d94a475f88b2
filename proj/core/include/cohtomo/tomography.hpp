#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cohtomo/fock.hpp"
#include "cohtomo/math.hpp"

namespace cohtomo {

/// Polarization Stokes parameters (s1, s2, s3) with the total intensity s0.
/// For quantum states s1^2 + s2^2 + s3^2 <= s0^2 up to rounding.
struct StokesVector {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;
};

/// Symmetrized covariance matrix V_ij of the four Stokes operators.
struct StokesCovariance {
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
};

/// Outcome of mapping a coherence tensor back to a density matrix.
///
/// `state` holds the raw image of the linear map (unnormalized when the
/// input was noisy), or the clipped-and-renormalized matrix when projection
/// was requested.  `trace` and `min_eigenvalue` always describe the raw
/// image, so callers can judge the quality of the reconstruction even after
/// projecting.
struct DensityResult {
  FixedNState state;
  double trace = 0.0;
  double min_eigenvalue = 0.0;
  std::vector<std::string> warnings;
  bool projected = false;
};

/// Inverts the coherence map for an order-N tensor: the highest-order
/// coherences determine every density-matrix element of an N-photon state.
/// Appends a "NormalizationWarning" when the trace strays from 1 by more
/// than 0.05 and a "PositivityWarning" when an eigenvalue drops below
/// -1e-6.  With `project_psd`, negative eigenvalues are clipped and the
/// trace renormalized to 1 (recorded in `projected`); the default leaves
/// the raw matrix untouched so estimator bias stays visible.
DensityResult density_from_coherences(const CoherenceTensor& tensor, bool project_psd = false);

/// Exact inverse of density_from_coherences for a valid N-photon state.
CoherenceTensor coherences_from_density(const FixedNState& state);

/// Stokes parameters of a classical two-mode amplitude pair.
StokesVector classical_stokes(cplx alpha1, cplx alpha2);

/// Quantum Stokes means, assembled from the first-order coherences.
/// Throws SymmetryError when the tensor is not Hermitian.
StokesVector stokes_means(const CoherenceTensor& first);

/// Covariance matrix V_ij = (1/2)<{S_i, S_j}> - <S_i><S_j>.  The
/// anticommutators are normal-ordered on the fly, so only first- and
/// second-order coherence tensors are needed.  The result is exactly
/// symmetric.
StokesCovariance stokes_variances(const CoherenceTensor& first, const CoherenceTensor& second);

}  // namespace cohtomo
