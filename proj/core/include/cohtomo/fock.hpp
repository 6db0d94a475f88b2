#ifndef COHTOMO_FOCK_HPP
#define COHTOMO_FOCK_HPP

#include <vector>

#include <Eigen/Dense>

#include "cohtomo/math.hpp"

namespace cohtomo {

/// A two-mode photon state confined to the sector with exactly N photons in
/// total.  The basis is |n>|N-n> with n = photons in mode 1, ascending, so a
/// pure state is an (N+1)-vector of amplitudes and a mixed state an
/// (N+1)x(N+1) density matrix.
class FixedNState {
 public:
  /// Normalized pure state.  Throws DimensionError on a size mismatch and
  /// NormalizationError if the amplitude vector has norm below 1e-12.
  static FixedNState pure(int order, const Eigen::VectorXcd& amplitudes);

  /// Mixed state.  Validates Hermiticity and unit trace within 1e-12 and
  /// eigenvalues >= -1e-10; throws NormalizationError / SymmetryError.
  static FixedNState mixed(int order, const Eigen::MatrixXcd& density);

  /// Mixed state without validation.  Used when a density matrix is the
  /// *output* of a reconstruction and may carry statistical noise; such
  /// defects are reported as warnings by the caller instead of thrown.
  static FixedNState mixed_unchecked(int order, const Eigen::MatrixXcd& density);

  int order() const { return order_; }
  bool is_mixed() const { return mixed_; }

  /// Amplitude vector of a pure state; throws InputError for mixed states.
  const Eigen::VectorXcd& amplitudes() const;

  /// Dense density matrix; materializes |psi><psi| for pure states.
  Eigen::MatrixXcd density_matrix() const;

  /// <m| rho |n> without materializing the full matrix for pure states.
  cplx density_element(int m, int n) const;

 private:
  FixedNState(int order, Eigen::VectorXcd amplitudes);
  FixedNState(int order, Eigen::MatrixXcd density);

  int order_;
  bool mixed_;
  Eigen::VectorXcd amplitudes_;
  Eigen::MatrixXcd density_;
};

/// Result of building a pure state from a raw amplitude vector: the
/// normalized state plus the Euclidean norm of the input that was divided
/// out.
struct NormalizedState {
  FixedNState state;
  double input_norm;
};

/// Index (w, y) of a coherence <a1^dag^(M-w) a2^dag^w a1^(M-y) a2^y> within
/// an order-M tensor.  alpha = w + y and beta = y - w are the grouping
/// coordinates used by the measurement recipe.
struct CoherenceIndex {
  int w = 0;
  int y = 0;

  int alpha() const { return w + y; }
  int beta() const { return y - w; }

  /// All indices of an order-M tensor with the given beta, listed by
  /// ascending alpha in {|beta|, |beta|+2, ..., 2M - |beta|}.
  static std::vector<CoherenceIndex> group(int beta, int order);

  friend bool operator==(const CoherenceIndex& a, const CoherenceIndex& b) {
    return a.w == b.w && a.y == b.y;
  }
};

/// Dense table of all (M+1)^2 normally ordered order-M coherences of a
/// two-mode state.  Entry (w, y) holds <a1^dag^(M-w) a2^dag^w a1^(M-y) a2^y>;
/// a physical tensor is Hermitian: entry(w, y) = conj(entry(y, w)).
class CoherenceTensor {
 public:
  explicit CoherenceTensor(int order);
  CoherenceTensor(int order, Eigen::MatrixXcd values);

  int order() const { return order_; }
  cplx at(int w, int y) const;
  void set(int w, int y, cplx value);
  const Eigen::MatrixXcd& values() const { return values_; }

  /// Largest absolute deviation from Hermitian symmetry.
  double hermiticity_defect() const;

  /// Hermitian within an absolute-plus-relative tolerance.
  bool is_hermitian(double tolerance = 1e-8) const;

  friend bool operator==(const CoherenceTensor& a, const CoherenceTensor& b) {
    return a.order_ == b.order_ && (a.values_.array() == b.values_.array()).all();
  }

 private:
  void check_index(int w, int y) const;

  int order_;
  Eigen::MatrixXcd values_;
};

/// Builds a normalized pure state and reports the normalization factor that
/// was applied.
NormalizedState make_fixed_n_state(int order, const Eigen::VectorXcd& amplitudes);

/// Exact normally ordered moment <a1^dag^p a2^dag^q a1^r a2^s>.  Vanishes
/// identically when p + q != r + s because the state lives in a fixed photon
/// number sector.
cplx normally_ordered_moment(const FixedNState& state, int p, int q, int r, int s);

/// Matrix of the induced (N+1)-dimensional action of a 2x2 mode
/// transformation U on the fixed-N sector; column n is the image of the
/// basis state |n>|N-n>, built by applying the transformed creation
/// operators to the vacuum.
Eigen::MatrixXcd number_preserving_representation(const Eigen::Matrix2cd& unitary, int order);

/// State after the mode transformation (b1, b2)^T = U (a1, a2)^T, i.e. the
/// state in which moments of the original operators equal moments of the
/// transformed operators in the input state.  Throws UnitarityError when
/// ||U^dag U - I||_max > 1e-10.
FixedNState apply_two_mode_unitary(const FixedNState& state, const Eigen::Matrix2cd& unitary);

/// Probability of detecting n photons in mode 1 (index n = 0..N).
Eigen::VectorXd photon_number_distribution(const FixedNState& state);

/// All order-M coherences of the state, computed moment by moment.
CoherenceTensor coherence_tensor(const FixedNState& state, int order);

}  // namespace cohtomo

#endif  // COHTOMO_FOCK_HPP
