#include "cohtomo/gadget.hpp"

#include <cmath>
#include <numbers>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd rotation(double angle) {
  Eigen::Matrix2cd r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

Eigen::Matrix2cd phase_diag(double half_angle) {
  Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
  d(0, 0) = std::polar(1.0, half_angle);
  d(1, 1) = std::polar(1.0, -half_angle);
  return d;
}

}  // namespace

MeasurementSetting::MeasurementSetting(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw RangeError("measurement setting angles must be finite");
  }
  // Fold theta into [0, pi/2]; each fold changes the gadget unitary by at
  // most a global sign, compensated by a phi shift.
  theta = wrap_angle(theta, 2.0 * kPi);
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  if (theta > kPi / 2.0) {
    theta = kPi - theta;
    phi += kPi;
  }
  theta_ = theta;
  phi_ = wrap_angle(phi, 2.0 * kPi);
}

Eigen::Matrix2cd gadget_unitary(const MeasurementSetting& setting) {
  const double c = std::cos(setting.theta());
  const double s = std::sin(setting.theta());
  const cplx phase = std::polar(1.0, setting.phi());
  Eigen::Matrix2cd u;
  u << c, phase * s, -std::conj(phase) * s, c;
  return u;
}

AxisTriple axis_triple(const MeasurementSetting& setting) {
  const double s = std::sin(setting.theta());
  return AxisTriple{std::cos(setting.phi()) * s, std::sin(setting.phi()) * s,
                    std::cos(setting.theta())};
}

EulerAngles euler_from_setting(const MeasurementSetting& setting) {
  const AxisTriple axis = axis_triple(setting);
  const double a = axis.a;
  const double b = axis.b;
  const double c = axis.c;

  if (std::abs(b) < 1e-12) {
    // phi = 0 or pi (or theta = 0): the gadget is a real rotation and a
    // single zeta suffices.
    if (std::cos(setting.phi()) >= 0.0 || setting.theta() < 1e-12) {
      return EulerAngles{0.0, 0.0, -2.0 * setting.theta()};
    }
    return EulerAngles{0.0, 0.0, 2.0 * setting.theta()};
  }

  const double radius = std::hypot(a, c);
  if (radius < 1e-12) {
    // theta = pi/2 with phi = +-pi/2.  The continuous limit of the general
    // branch is eta = pi with xi - zeta = sign(b) * pi, not the eta = 0
    // shortcut sometimes quoted for this corner, which reconstructs a
    // different unitary.
    return EulerAngles{0.0, kPi, b > 0.0 ? -kPi : kPi};
  }

  const double eta = 2.0 * std::acos(std::min(1.0, radius));
  const double sum_half = std::atan2(-a, c);            // (xi + zeta) / 2
  const double diff_half = (b > 0.0 ? 1.0 : -1.0) * kPi / 2.0;  // (xi - zeta) / 2
  return EulerAngles{sum_half + diff_half, eta, sum_half - diff_half};
}

Eigen::Matrix2cd euler_unitary(const EulerAngles& euler) {
  return rotation(euler.xi / 2.0) * phase_diag(euler.eta / 2.0) * rotation(euler.zeta / 2.0);
}

Eigen::Matrix2cd quarter_wave_jones(double alpha) {
  return rotation(alpha) * phase_diag(kPi / 4.0) * rotation(-alpha);
}

Eigen::Matrix2cd half_wave_jones(double alpha) {
  return rotation(alpha) * phase_diag(kPi / 2.0) * rotation(-alpha);
}

PlateAngles plate_angles_from_euler(const EulerAngles& euler) {
  PlateAngles raw;
  raw.qp1 = euler.xi / 2.0 + kPi / 4.0;
  raw.qp2 = (euler.xi + euler.eta) / 2.0 + kPi / 4.0;
  raw.hp = (euler.xi + euler.eta - euler.zeta) / 4.0 - kPi / 4.0;
  return normalize_plate_angles(raw);
}

PlateAngles normalize_plate_angles(const PlateAngles& plates) {
  return PlateAngles{wrap_angle(plates.qp1, kPi), wrap_angle(plates.qp2, kPi),
                     wrap_angle(plates.hp, kPi / 2.0)};
}

Eigen::Matrix2cd compose_plate_unitary(const PlateAngles& plates) {
  // Order calibrated against the nine-row reference table: the half-wave
  // plate acts on the field first.  For plate angles derived from
  // (xi, eta, zeta) this equals R(xi/2) diag(e^{i eta/2}, e^{-i eta/2})
  // R(zeta/2) exactly; wrapping the angles to their canonical ranges can
  // flip the overall sign.
  return quarter_wave_jones(plates.qp1) * quarter_wave_jones(plates.qp2) *
         half_wave_jones(plates.hp);
}

SettingAngles setting_angles(const MeasurementSetting& setting) {
  SettingAngles result;
  result.theta = setting.theta();
  result.phi = setting.phi();
  result.euler = euler_from_setting(setting);
  result.plates = plate_angles_from_euler(result.euler);
  return result;
}

std::vector<Table1Row> table1() {
  struct Reference {
    double theta;
    double phi;
    std::array<double, 3> euler;
    std::array<double, 3> plates;
  };
  // Published reference values for the nine second-order settings.  Values
  // are printed to three decimals; the zeta of the first row is a known
  // misprint (4.197 where only 4.917 reproduces the row's plate angles).
  static const Reference kReference[] = {
      {kPi / 8.0, 2.0 * kPi / 3.0, {1.775, 0.676, 4.197}, {1.673, 2.011, 0.169}},
      {kPi / 4.0, 2.0 * kPi / 3.0, {2.034, 1.318, 5.176}, {1.802, 2.461, 0.329}},
      {3.0 * kPi / 8.0, 2.0 * kPi / 3.0, {-3.833, 1.855, -0.692}, {2.010, 2.938, 0.464}},
      {kPi / 8.0, 4.0 * kPi / 3.0, {4.917, 0.676, 1.775}, {0.102, 0.440, 1.740}},
      {kPi / 4.0, 4.0 * kPi / 3.0, {-1.107, 1.318, -4.249}, {0.232, 0.891, 1.900}},
      {3.0 * kPi / 8.0, 4.0 * kPi / 3.0, {5.591, 1.855, 2.450}, {0.439, 1.367, 2.034}},
      {kPi / 8.0, 0.0, {0.0, 0.0, -kPi / 4.0}, {kPi / 4.0, kPi / 4.0, 13.0 * kPi / 16.0}},
      {kPi / 4.0, 0.0, {0.0, 0.0, -kPi / 2.0}, {kPi / 4.0, kPi / 4.0, 7.0 * kPi / 8.0}},
      {3.0 * kPi / 8.0, 0.0, {0.0, 0.0, -3.0 * kPi / 4.0}, {kPi / 4.0, kPi / 4.0, 15.0 * kPi / 16.0}},
  };
  // Matching tolerance: the reference values carry three decimals.
  constexpr double kTol = 5e-3;

  std::vector<Table1Row> rows;
  for (const Reference& ref : kReference) {
    Table1Row row;
    row.computed = setting_angles(MeasurementSetting(ref.theta, ref.phi));
    row.reference_euler = EulerAngles{ref.euler[0], ref.euler[1], ref.euler[2]};
    row.reference_plates = PlateAngles{ref.plates[0], ref.plates[1], ref.plates[2]};
    row.euler_consistent =
        circular_distance(row.computed.euler.xi, ref.euler[0], 2.0 * kPi) <= kTol &&
        circular_distance(row.computed.euler.eta, ref.euler[1], 2.0 * kPi) <= kTol &&
        circular_distance(row.computed.euler.zeta, ref.euler[2], 2.0 * kPi) <= kTol;
    row.plates_consistent =
        circular_distance(row.computed.plates.qp1, ref.plates[0], kPi) <= kTol &&
        circular_distance(row.computed.plates.qp2, ref.plates[1], kPi) <= kTol &&
        circular_distance(row.computed.plates.hp, ref.plates[2], kPi / 2.0) <= kTol;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cohtomo
