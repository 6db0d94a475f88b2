#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include <cohtomo/errors.hpp>
#include <cohtomo/fock.hpp>
#include <cohtomo/tomography.hpp>

#include "oracles.hpp"

using namespace cohtomo;

namespace {

bool contains_warning(const std::vector<std::string>& warnings, const std::string& needle) {
  for (const auto& warning : warnings) {
    if (warning.find(needle) != std::string::npos) {
      return true;
    }
  }
  return false;
}

FixedNState noon2() {
  Eigen::VectorXcd amps(3);
  amps << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0);
  return FixedNState::pure(2, amps);
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("top coherences determine the density matrix: basis state") {
  Eigen::VectorXcd amps(3);
  amps << 0.0, 0.0, 1.0;  // both photons in mode 1
  const CoherenceTensor tensor = coherence_tensor(FixedNState::pure(2, amps), 2);
  const DensityResult result = density_from_coherences(tensor);
  const Eigen::MatrixXcd rho = result.state.density_matrix();
  CHECK(std::abs(rho(2, 2) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0));
  CHECK(result.trace == doctest::Approx(1.0));
  CHECK(result.min_eigenvalue > -1e-12);
  CHECK(result.warnings.empty());
  CHECK_FALSE(result.projected);
}

TEST_CASE("top coherences determine the density matrix: two-photon superposition") {
  const DensityResult result = density_from_coherences(coherence_tensor(noon2(), 2));
  const Eigen::MatrixXcd rho = result.state.density_matrix();
  CHECK(std::abs(rho(0, 0) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(rho(2, 2) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(rho(0, 2) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(rho(2, 0) - cplx(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(rho(1, 1)) < 1e-12);
}

TEST_CASE("density and coherences are exact inverses of each other") {
  std::mt19937_64 rng(2718);
  for (int order = 1; order <= 8; ++order) {
    const FixedNState state = oracles::random_mixed(order, rng);
    const CoherenceTensor tensor = coherences_from_density(state);
    const DensityResult back = density_from_coherences(tensor);
    CHECK((back.state.density_matrix() - state.density_matrix()).cwiseAbs().maxCoeff() <
          1e-12);

    const CoherenceTensor direct = coherence_tensor(state, order);
    CHECK((tensor.values() - direct.values()).cwiseAbs().maxCoeff() < 1e-10);

    const CoherenceTensor again = coherences_from_density(back.state);
    CHECK((again.values() - tensor.values()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("a scaled tensor trips the normalization warning") {
  CoherenceTensor tensor = coherence_tensor(noon2(), 2);
  CoherenceTensor scaled(2, 1.2 * tensor.values());
  const DensityResult result = density_from_coherences(scaled);
  CHECK(result.trace == doctest::Approx(1.2));
  CHECK(contains_warning(result.warnings, "NormalizationWarning"));
  CHECK_FALSE(result.projected);
}

TEST_CASE("an indefinite tensor trips the positivity warning and projects cleanly") {
  Eigen::MatrixXcd indefinite(2, 2);
  indefinite << 1.2, 0.0, 0.0, -0.2;
  const CoherenceTensor tensor =
      coherences_from_density(FixedNState::mixed_unchecked(1, indefinite));

  const DensityResult raw = density_from_coherences(tensor);
  CHECK(raw.trace == doctest::Approx(1.0));
  CHECK(raw.min_eigenvalue == doctest::Approx(-0.2));
  CHECK(contains_warning(raw.warnings, "PositivityWarning"));
  CHECK_FALSE(raw.projected);
  CHECK(std::abs(raw.state.density_matrix()(1, 1) - cplx(-0.2, 0.0)) < 1e-12);

  const DensityResult projected = density_from_coherences(tensor, true);
  CHECK(projected.projected);
  CHECK(projected.min_eigenvalue == doctest::Approx(-0.2));  // still reports the raw image
  const Eigen::MatrixXcd rho = projected.state.density_matrix();
  CHECK(std::abs(rho(0, 0) - cplx(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(rho(1, 1)) < 1e-12);
  CHECK(rho.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("projection of an all-zero tensor fails loudly") {
  const CoherenceTensor zero(1);
  CHECK_THROWS_AS(density_from_coherences(zero, true), NumericalError);
}

TEST_CASE("classical Stokes parameters of simple amplitude pairs") {
  const StokesVector horizontal = classical_stokes(cplx(1.0, 0.0), cplx(0.0, 0.0));
  CHECK(horizontal.s0 == doctest::Approx(1.0));
  CHECK(horizontal.s1 == doctest::Approx(1.0));
  CHECK(horizontal.s2 == doctest::Approx(0.0));
  CHECK(horizontal.s3 == doctest::Approx(0.0));

  const double r = 1.0 / std::sqrt(2.0);
  const StokesVector diagonal = classical_stokes(cplx(r, 0.0), cplx(r, 0.0));
  CHECK(diagonal.s1 == doctest::Approx(0.0));
  CHECK(diagonal.s2 == doctest::Approx(1.0));
  CHECK(diagonal.s3 == doctest::Approx(0.0));

  const StokesVector circular = classical_stokes(cplx(r, 0.0), cplx(0.0, r));
  CHECK(circular.s1 == doctest::Approx(0.0));
  CHECK(circular.s2 == doctest::Approx(0.0));
  CHECK(circular.s3 == doctest::Approx(1.0));

  const StokesVector bright = classical_stokes(cplx(2.0, 0.0), cplx(0.0, 0.0));
  CHECK(bright.s0 == doctest::Approx(4.0));
  CHECK(bright.s1 == doctest::Approx(4.0));
}

TEST_CASE("quantum Stokes means of one-photon states") {
  Eigen::VectorXcd mode1(2);
  mode1 << 0.0, 1.0;
  const StokesVector linear = stokes_means(coherence_tensor(FixedNState::pure(1, mode1), 1));
  CHECK(linear.s0 == doctest::Approx(1.0));
  CHECK(linear.s1 == doctest::Approx(1.0));
  CHECK(linear.s2 == doctest::Approx(0.0).scale(1.0));
  CHECK(linear.s3 == doctest::Approx(0.0).scale(1.0));

  Eigen::VectorXcd circular(2);
  circular << cplx(0.0, 1.0 / std::sqrt(2.0)), cplx(1.0 / std::sqrt(2.0), 0.0);
  const StokesVector circ = stokes_means(coherence_tensor(FixedNState::pure(1, circular), 1));
  CHECK(circ.s0 == doctest::Approx(1.0));
  CHECK(circ.s1 == doctest::Approx(0.0).scale(1.0));
  CHECK(circ.s2 == doctest::Approx(0.0).scale(1.0));
  CHECK(circ.s3 == doctest::Approx(1.0));

  CHECK_THROWS_AS(stokes_means(CoherenceTensor(2)), DimensionError);
}

TEST_CASE("Stokes means and covariance match the explicit-operator oracle") {
  std::mt19937_64 rng(141);
  for (int trial = 0; trial < 20; ++trial) {
    const int order = 1 + static_cast<int>(rng() % 4);
    const FixedNState state =
        (trial % 2 == 0) ? oracles::random_mixed(order, rng) : oracles::random_pure(order, rng);
    const oracles::ProductSpace oracle(state);

    const CoherenceTensor first = coherence_tensor(state, 1);
    const CoherenceTensor second = coherence_tensor(state, 2);

    const StokesVector means = stokes_means(first);
    const auto expected_means = oracle.stokes_means();
    CHECK(std::abs(means.s0 - expected_means[0]) < 1e-10);
    CHECK(std::abs(means.s1 - expected_means[1]) < 1e-10);
    CHECK(std::abs(means.s2 - expected_means[2]) < 1e-10);
    CHECK(std::abs(means.s3 - expected_means[3]) < 1e-10);

    const StokesCovariance cov = stokes_variances(first, second);
    const Eigen::Matrix4d expected = oracle.stokes_covariance();
    CHECK((cov.v - expected).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((cov.v - cov.v.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Stokes covariance of the vacuum vanishes identically") {
  const FixedNState vacuum = FixedNState::mixed(0, Eigen::MatrixXcd::Identity(1, 1));
  const StokesCovariance cov =
      stokes_variances(coherence_tensor(vacuum, 1), coherence_tensor(vacuum, 2));
  CHECK(cov.v.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Stokes covariance of one photon in mode 1") {
  Eigen::VectorXcd amps(2);
  amps << 0.0, 1.0;
  const FixedNState state = FixedNState::pure(1, amps);
  const StokesCovariance cov =
      stokes_variances(coherence_tensor(state, 1), coherence_tensor(state, 2));
  CHECK(std::abs(cov.v(0, 0)) < 1e-10);
  CHECK(std::abs(cov.v(1, 1)) < 1e-10);
  CHECK(std::abs(cov.v(2, 2) - 1.0) < 1e-10);
  CHECK(std::abs(cov.v(3, 3) - 1.0) < 1e-10);
}

TEST_CASE("variance arguments must have orders 1 and 2") {
  const FixedNState state = noon2();
  CHECK_THROWS_AS(stokes_variances(coherence_tensor(state, 2), coherence_tensor(state, 2)),
                  DimensionError);
  CHECK_THROWS_AS(stokes_variances(coherence_tensor(state, 1), coherence_tensor(state, 1)),
                  DimensionError);
}

}
