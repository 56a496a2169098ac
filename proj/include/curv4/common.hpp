#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace curv4 {

using Vec4 = std::array<double, 4>;

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

using Mat4d = Mat4<double>;
using Mat3d = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

/// Invalid user-supplied parameter or point outside the chart domain.
class param_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: degenerate frame, NaN at a quadrature node, ...
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline double sq(double x) { return x * x; }

inline double max_abs3x3(const Mat3d& m) {
  double r = 0.0;
  for (const auto& row : m)
    for (double x : row) r = std::max(r, std::abs(x));
  return r;
}

inline double trace3(const Mat3d& m) { return m[0][0] + m[1][1] + m[2][2]; }

}  // namespace curv4
