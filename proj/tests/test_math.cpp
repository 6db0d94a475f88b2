#include <doctest.h>

#include <numbers>

#include <cohtomo/errors.hpp>
#include <cohtomo/math.hpp>

using namespace cohtomo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("math") {

TEST_CASE("factorials are exact integers over the supported range") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(1) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(factorial(16) == 20922789888000.0);
  CHECK(factorial(18) == 6402373705728000.0);
  CHECK(factorial(2 * kMaxOrder) == doctest::Approx(2.6313083693369352e+35).epsilon(1e-15));
  CHECK_THROWS_AS(factorial(-1), RangeError);
  CHECK_THROWS_AS(factorial(2 * kMaxOrder + 1), RangeError);
}

TEST_CASE("falling factorial handles the degenerate cases") {
  CHECK(falling_factorial(5, 2) == 20.0);
  CHECK(falling_factorial(5, 0) == 1.0);
  CHECK(falling_factorial(5, 5) == 120.0);
  CHECK(falling_factorial(2, 3) == 0.0);
  CHECK(falling_factorial(0, 1) == 0.0);
  CHECK_THROWS_AS(falling_factorial(5, -1), RangeError);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(4, 2) == 6.0);
  CHECK(binomial(16, 8) == 12870.0);
  CHECK(binomial(5, -1) == 0.0);
  CHECK(binomial(5, 6) == 0.0);
}

TEST_CASE("angle wrapping is exact at the period boundaries") {
  CHECK(wrap_angle(0.0, 2.0 * kPi) == 0.0);
  CHECK(wrap_angle(2.0 * kPi, 2.0 * kPi) == 0.0);
  CHECK(wrap_angle(-kPi / 2.0, 2.0 * kPi) == doctest::Approx(3.0 * kPi / 2.0));
  CHECK(wrap_angle(5.0 * kPi, 2.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(1.25, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("circular distance is symmetric and wraps") {
  CHECK(circular_distance(0.1, 2.0 * kPi - 0.1, 2.0 * kPi) == doctest::Approx(0.2));
  CHECK(circular_distance(2.0 * kPi - 0.1, 0.1, 2.0 * kPi) == doctest::Approx(0.2));
  CHECK(circular_distance(0.0, kPi, 2.0 * kPi) == doctest::Approx(kPi));
  CHECK(circular_distance(0.25, 0.75, 1.0) == doctest::Approx(0.5));
  CHECK(circular_distance(3.0, 3.0, kPi) == 0.0);
}

}
