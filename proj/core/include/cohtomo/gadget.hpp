#ifndef COHTOMO_GADGET_HPP
#define COHTOMO_GADGET_HPP

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "cohtomo/math.hpp"

namespace cohtomo {

/// One analyzer setting (theta, phi) of the two-mode mixing gadget.  theta
/// is reduced into [0, pi/2] and phi into [0, 2*pi) on construction, in a
/// way that changes the gadget unitary by at most a global sign.
class MeasurementSetting {
 public:
  MeasurementSetting(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;

 private:
  double theta_;
  double phi_;
};

/// Euler angles (xi, eta, zeta) of a gadget unitary in the y-z-y generator
/// convention used by plate_angles_from_euler.
struct EulerAngles {
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;

  friend bool operator==(const EulerAngles&, const EulerAngles&) = default;
};

/// Cartesian components (a, b, c) = (cos(phi) sin(theta), sin(phi)
/// sin(theta), cos(theta)); always a unit vector.
struct AxisTriple {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  friend bool operator==(const AxisTriple&, const AxisTriple&) = default;
};

/// Orientation angles of the three wave plates, in radians.  Canonical
/// ranges are [0, pi) for the quarter-wave plates and [0, pi/2) for the
/// half-wave plate; both periods leave the composed unitary unchanged up to
/// a global phase.
struct PlateAngles {
  double qp1 = 0.0;
  double qp2 = 0.0;
  double hp = 0.0;

  friend bool operator==(const PlateAngles&, const PlateAngles&) = default;
};

/// Setting together with its computed Euler and plate angles.
struct SettingAngles {
  double theta = 0.0;
  double phi = 0.0;
  EulerAngles euler;
  PlateAngles plates;

  friend bool operator==(const SettingAngles&, const SettingAngles&) = default;
};

/// One row of the canonical second-order settings table: computed angles
/// next to the published reference values, with per-row consistency flags.
struct Table1Row {
  SettingAngles computed;
  EulerAngles reference_euler;
  PlateAngles reference_plates;
  bool euler_consistent = false;
  bool plates_consistent = false;

  friend bool operator==(const Table1Row&, const Table1Row&) = default;
};

/// The 2x2 gadget unitary
///   [[cos(theta),              e^{i phi} sin(theta)],
///    [-e^{-i phi} sin(theta),  cos(theta)         ]].
Eigen::Matrix2cd gadget_unitary(const MeasurementSetting& setting);

AxisTriple axis_triple(const MeasurementSetting& setting);

/// Euler angles whose y-z-y reconstruction equals the gadget unitary up to
/// a global sign, on every branch including the degenerate ones (b = 0 and
/// a = c = 0).
EulerAngles euler_from_setting(const MeasurementSetting& setting);

/// R(xi/2) diag(e^{i eta/2}, e^{-i eta/2}) R(zeta/2) with R a real rotation;
/// the reconstruction that euler_from_setting is defined against.
Eigen::Matrix2cd euler_unitary(const EulerAngles& euler);

/// Quarter-wave plate at orientation alpha:
///   R(alpha) diag(e^{i pi/4}, e^{-i pi/4}) R(-alpha).
Eigen::Matrix2cd quarter_wave_jones(double alpha);

/// Half-wave plate at orientation alpha: R(alpha) diag(i, -i) R(-alpha).
Eigen::Matrix2cd half_wave_jones(double alpha);

/// Plate orientations realizing the Euler triple:
///   qp1 = xi/2 + pi/4,  qp2 = (xi + eta)/2 + pi/4,
///   hp  = (xi + eta - zeta)/4 - pi/4,
/// reduced to the canonical ranges.
PlateAngles plate_angles_from_euler(const EulerAngles& euler);

/// Reduce plate angles to the canonical ranges; idempotent.
PlateAngles normalize_plate_angles(const PlateAngles& plates);

/// Jones product of the three plates.  The order QWP(qp1) * QWP(qp2) *
/// HWP(hp) (half-wave plate applied to the field first) was calibrated once
/// against the nine-row reference table and is frozen here; it reproduces
/// the gadget unitary up to a global sign for every setting.
Eigen::Matrix2cd compose_plate_unitary(const PlateAngles& plates);

/// Euler and plate angles for one setting.
SettingAngles setting_angles(const MeasurementSetting& setting);

/// The nine canonical second-order settings (three theta values times three
/// phi values) with computed angles and published reference values.  One
/// reference zeta entry is internally inconsistent with its own row's plate
/// angles; its row is flagged euler_consistent = false.
std::vector<Table1Row> table1();

}  // namespace cohtomo

#endif  // COHTOMO_GADGET_HPP
