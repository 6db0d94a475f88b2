#include "cohtomo/math.hpp"

#include <array>
#include <cmath>

#include "cohtomo/errors.hpp"

namespace cohtomo {

namespace {

constexpr int kFactorialTableSize = 2 * kMaxOrder + 1;

std::array<double, kFactorialTableSize> build_factorials() {
  std::array<double, kFactorialTableSize> table{};
  table[0] = 1.0;
  for (int n = 1; n < kFactorialTableSize; ++n) {
    table[n] = table[n - 1] * static_cast<double>(n);
  }
  return table;
}

}  // namespace

double factorial(int n) {
  static const auto table = build_factorials();
  if (n < 0 || n >= kFactorialTableSize) {
    throw RangeError("factorial argument out of supported range: " + std::to_string(n));
  }
  return table[static_cast<std::size_t>(n)];
}

double falling_factorial(int n, int k) {
  if (k < 0) {
    throw RangeError("falling_factorial requires k >= 0");
  }
  if (k > n) {
    return 0.0;
  }
  double product = 1.0;
  for (int i = 0; i < k; ++i) {
    product *= static_cast<double>(n - i);
  }
  return product;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  return factorial(n) / (factorial(k) * factorial(n - k));
}

double wrap_angle(double angle, double period) {
  double reduced = std::fmod(angle, period);
  if (reduced < 0.0) {
    reduced += period;
  }
  if (reduced == period) {
    reduced = 0.0;
  }
  return reduced;
}

double circular_distance(double a, double b, double period) {
  const double diff = wrap_angle(a - b, period);
  return std::min(diff, period - diff);
}

}  // namespace cohtomo
