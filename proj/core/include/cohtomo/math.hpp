#ifndef COHTOMO_MATH_HPP
#define COHTOMO_MATH_HPP

#include <complex>

namespace cohtomo {

using cplx = std::complex<double>;

/// Largest total photon number the library supports.  All factorials that
/// appear below this bound are exactly representable in a double.
inline constexpr int kMaxOrder = 16;

/// n! as a double, exact for n <= 18.
double factorial(int n);

/// n (n-1) ... (n-k+1), exact for results below 2^53; zero when k > n.
double falling_factorial(int n, int k);

/// Binomial coefficient as a double, exact over the supported order range.
double binomial(int n, int k);

/// Reduce an angle into [0, period); exact when the input is 0 or period.
double wrap_angle(double angle, double period);

/// Distance between two angles on a circle of the given period.
double circular_distance(double a, double b, double period);

}  // namespace cohtomo

#endif  // COHTOMO_MATH_HPP
