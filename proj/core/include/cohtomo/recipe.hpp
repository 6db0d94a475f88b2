#ifndef COHTOMO_RECIPE_HPP
#define COHTOMO_RECIPE_HPP

#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cohtomo/expansion.hpp"
#include "cohtomo/fock.hpp"
#include "cohtomo/gadget.hpp"

namespace cohtomo {

enum class Parity { even, odd };

/// The measurement settings that determine all order-N coherences from
/// (N+1)^2 intensity moments behind the gadget.
///
/// Even N:  theta_j = j pi / (2 (N+2)), j = 1..N+1,
///          phi_k   = 2 pi k / (N+1),   k = 1..N+1.
/// Odd N:   theta_j = j pi / (2 (N+1)), j = 1..N,
///          phi_k   = 2 pi k / (N+2),   k = 1..N+2,
///          plus one extra setting (0, 0).
///
/// The last phi value is kept as 2*pi in `phis` to mirror the k-indexing;
/// the settings list stores it reduced to 0, which is trigonometrically
/// identical everywhere it is used.
struct SettingsPlan {
  int order = 0;
  Parity parity = Parity::even;
  std::vector<double> thetas;
  std::vector<double> phis;
  std::optional<MeasurementSetting> extra;
  std::vector<MeasurementSetting> settings;  // theta-major cross product, extra last

  friend bool operator==(const SettingsPlan&, const SettingsPlan&) = default;
};

/// One measured (or exactly predicted) moment <b1^dag^N b1^N> at a setting.
/// `std_error` is present for estimates from finite shot counts.
struct MeasurementRecord {
  MeasurementSetting setting;
  double value = 0.0;
  std::optional<double> std_error;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

/// One group of coherences that a single aggregation weight isolates,
/// together with the linear system that determines it.  Column c of
/// `matrix` belongs to `columns[c]`; the coefficient in the row for
/// theta_j is C(N,(alpha+beta)/2) C(N,(alpha-beta)/2) cos^(2N-alpha)
/// sin^alpha evaluated at theta_j.
struct GroupSystem {
  int m = 0;
  std::vector<int> betas;
  std::vector<CoherenceIndex> columns;
  Eigen::MatrixXd matrix;
  Eigen::VectorXcd rhs;
  double condition = 0.0;  // 2-norm condition number of `matrix`
};

/// Per-group solver diagnostics attached to a reconstruction.
struct GroupReport {
  double condition = 0.0;
  double residual = 0.0;  // ||A x - b|| / max(||b||, 1e-300)

  friend bool operator==(const GroupReport&, const GroupReport&) = default;
};

struct Reconstruction {
  CoherenceTensor tensor;
  std::map<int, GroupReport> groups;
  /// Propagated standard error per tensor entry, present when every record
  /// carried one.
  std::optional<Eigen::MatrixXd> entry_std_error;
};

/// Throws RangeError unless 1 <= order <= 16.
SettingsPlan settings_plan(int order);

/// Exact records over a plan: predicted_moment at every setting (and the
/// extra setting for odd orders), with no standard error.
std::vector<MeasurementRecord> predicted_records(const CoherenceTensor& tensor,
                                                 const SettingsPlan& plan);

/// Aggregation weights m that the plan's reconstruction uses: 0..N/2 for
/// even N, 0..(N+1)/2 for odd N.
std::vector<int> aggregation_weights(const SettingsPlan& plan);

/// Betas whose coherences survive the weight-m aggregation, i.e. beta = -m
/// (mod |phis|) intersected with [-N, N].
std::vector<int> surviving_betas(const SettingsPlan& plan, int m);

/// (1/|phis|) sum_k e^{i m phi_k} x_{theta_j, phi_k} for every theta_j,
/// indexed like plan.thetas.  The records must cover the plan's theta x phi
/// cross product exactly once (the extra setting is ignored here); anything
/// else throws PlanMismatchError.
std::vector<cplx> aggregate(const std::vector<MeasurementRecord>& records,
                            const SettingsPlan& plan, int m);

/// Assembles the square linear system for one aggregation weight.  `extra`
/// is the record at the plan's extra setting and is required exactly when
/// the plan has one and m == 0.
GroupSystem build_group_system(const SettingsPlan& plan, int m,
                               const std::vector<cplx>& aggregated,
                               const std::optional<MeasurementRecord>& extra);

/// Recovers the full order-N coherence tensor from records over
/// settings_plan(order).  The result is Hermitian by construction: each
/// group determines one family of entries and the mirror entries are filled
/// with conjugates.
Reconstruction reconstruct(const std::vector<MeasurementRecord>& records, int order);

/// Condition number of every group system of the plan, keyed by m.
std::map<int, double> condition_report(const SettingsPlan& plan);

}  // namespace cohtomo

#endif  // COHTOMO_RECIPE_HPP
