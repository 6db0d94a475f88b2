#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <cohtomo/errors.hpp>
#include <cohtomo/expansion.hpp>
#include <cohtomo/fock.hpp>

#include "oracles.hpp"

using namespace cohtomo;

namespace {

constexpr double kPi = std::numbers::pi;

FixedNState noon2() {
  Eigen::VectorXcd amps(3);
  amps << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  return FixedNState::pure(2, amps);
}

}  // namespace

TEST_SUITE("expansion") {

TEST_CASE("correlation spec validates its ranges") {
  CHECK_NOTHROW(CorrelationSpec(3, 0));
  CHECK_NOTHROW(CorrelationSpec(3, 3));
  CHECK_THROWS_AS(CorrelationSpec(-1, 0), RangeError);
  CHECK_THROWS_AS(CorrelationSpec(kMaxOrder + 1, 0), RangeError);
  CHECK_THROWS_AS(CorrelationSpec(3, 4), RangeError);
  CHECK_THROWS_AS(CorrelationSpec(3, -1), RangeError);
}

TEST_CASE("port-1 coefficients have the closed binomial form") {
  const int order = 3;
  const MeasurementSetting setting(0.6, 1.9);
  const Eigen::MatrixXcd coeff =
      correlation_coefficients(CorrelationSpec(order, order), setting);
  REQUIRE(coeff.rows() == order + 1);
  REQUIRE(coeff.cols() == order + 1);
  const double c = std::cos(setting.theta());
  const double s = std::sin(setting.theta());
  for (int w = 0; w <= order; ++w) {
    for (int y = 0; y <= order; ++y) {
      const cplx expected = binomial(order, w) * binomial(order, y) *
                            std::pow(c, 2 * order - w - y) * std::pow(s, w + y) *
                            std::polar(1.0, setting.phi() * (y - w));
      CHECK(std::abs(coeff(w, y) - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("coefficient tables reproduce every output correlation") {
  // Contract the coefficient table with the input tensor and compare against
  // the ladder-matrix oracle for each output port split i.
  std::mt19937_64 rng(88);
  const int order = 3;
  const FixedNState state = oracles::random_mixed(order, rng);
  const CoherenceTensor tensor = coherence_tensor(state, order);
  const oracles::ProductSpace oracle(state);

  for (int trial = 0; trial < 5; ++trial) {
    const MeasurementSetting setting = oracles::random_setting(rng);
    const Eigen::Matrix2cd u = gadget_unitary(setting);
    const Eigen::MatrixXcd b1 = u(0, 0) * oracle.a1 + u(0, 1) * oracle.a2;
    const Eigen::MatrixXcd b2 = u(1, 0) * oracle.a1 + u(1, 1) * oracle.a2;
    for (int i = 0; i <= order; ++i) {
      cplx contracted(0.0, 0.0);
      const Eigen::MatrixXcd coeff =
          correlation_coefficients(CorrelationSpec(order, i), setting);
      for (int w = 0; w <= order; ++w) {
        for (int y = 0; y <= order; ++y) {
          contracted += coeff(w, y) * tensor.at(w, y);
        }
      }
      const Eigen::MatrixXcd op = oracle.power(b1.adjoint(), i) *
                                  oracle.power(b2.adjoint(), order - i) *
                                  oracle.power(b1, i) * oracle.power(b2, order - i);
      const cplx expected = (oracle.rho * op).trace();
      CHECK(std::abs(contracted - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

TEST_CASE("predicted moment rejects non-Hermitian tensors") {
  CoherenceTensor lopsided(1);
  lopsided.set(0, 1, cplx(1.0, 0.0));
  CHECK_THROWS_AS(predicted_moment(lopsided, MeasurementSetting(0.3, 0.4)), SymmetryError);
}

TEST_CASE("two photons in one mode predict 2 cos^4(theta)") {
  Eigen::VectorXcd amps(3);
  amps << 0.0, 0.0, 1.0;
  const CoherenceTensor tensor = coherence_tensor(FixedNState::pure(2, amps), 2);
  for (double theta : {0.0, 0.4, kPi / 4.0, 1.2, kPi / 2.0}) {
    const double expected = 2.0 * std::pow(std::cos(theta), 4);
    CHECK(predicted_moment(tensor, MeasurementSetting(theta, 0.9)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("two-photon superposition interferes as (1 + cos 2 phi) / 2") {
  const CoherenceTensor tensor = coherence_tensor(noon2(), 2);
  for (double phi : {0.0, 0.3, kPi / 2.0, 2.0, kPi, 5.0}) {
    const double expected = 0.5 * (1.0 + std::cos(2.0 * phi));
    CHECK(std::abs(predicted_moment(tensor, MeasurementSetting(kPi / 4.0, phi)) - expected) <
          1e-12);
  }
}

TEST_CASE("predicted moments match the oracle for random states and settings") {
  std::mt19937_64 rng(1234);
  for (int order = 1; order <= 5; ++order) {
    const FixedNState state = oracles::random_mixed(order, rng);
    const CoherenceTensor tensor = coherence_tensor(state, order);
    const oracles::ProductSpace oracle(state);
    for (int trial = 0; trial < 10; ++trial) {
      const MeasurementSetting setting = oracles::random_setting(rng);
      const double expected = oracle.intensity_moment(gadget_unitary(setting), order);
      const double got = predicted_moment(tensor, setting);
      CHECK(std::abs(got - expected) < 1e-9 * std::max(1.0, std::abs(expected)));
    }
  }
}

}
