#pragma once

// Coordinate charts and frame fields. A FrameField maps a chart point to the
// vierbein matrix e^a_mu and is evaluable over plain reals and over jets, so
// callers can request up to two analytic derivatives of the frame.

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "curv4/common.hpp"
#include "curv4/jets.hpp"

namespace curv4 {

struct Chart {
  std::array<std::string, 4> coord_names;
  Vec4 lower{};
  Vec4 upper{};
  std::array<bool, 4> periodic{};
  std::string singular_loci;  // measure-zero degeneracies, for documentation

  int index_of(const std::string& name) const;
  bool contains(const Vec4& x) const;
  /// True if x keeps at least `margin` * (range) away from every wall.
  bool interior(const Vec4& x, double margin = 0.0) const;
};

using Params = std::map<std::string, double>;

class FrameField {
 public:
  template <class F>
  FrameField(std::string name, Chart chart, Params params, F f)
      : name_(std::move(name)),
        chart_(std::move(chart)),
        params_(std::move(params)),
        eval_d_([f](const std::array<double, 4>& x) { return f(x); }),
        eval_j1_([f](const std::array<Jet1, 4>& x) { return f(x); }),
        eval_j2_([f](const std::array<Jet2, 4>& x) { return f(x); }) {}

  const std::string& name() const { return name_; }
  const Chart& chart() const { return chart_; }
  const Params& params() const { return params_; }

  /// Vierbein e^a_mu at x (row = frame index a, column = coordinate mu).
  Mat4d frame(const Vec4& x) const {
    std::array<double, 4> p{x[0], x[1], x[2], x[3]};
    return eval_d_(p);
  }
  Mat4<Jet1> frame_j1(const Vec4& x) const { return eval_j1_(seed_j1(x)); }
  Mat4<Jet2> frame_j2(const Vec4& x) const { return eval_j2_(seed_j2(x)); }

  /// Induced metric g_munu = sum_a e^a_mu e^a_nu.
  Mat4d metric(const Vec4& x) const;

  /// det(e^a_mu); positive on the chart interior by construction.
  double volume_density(const Vec4& x) const;

  /// Throws param_error if x leaves the chart or sits on a frame degeneracy.
  void require_interior(const Vec4& x) const;

 private:
  std::string name_;
  Chart chart_;
  Params params_;
  std::function<Mat4d(const std::array<double, 4>&)> eval_d_;
  std::function<Mat4<Jet1>(const std::array<Jet1, 4>&)> eval_j1_;
  std::function<Mat4<Jet2>(const std::array<Jet2, 4>&)> eval_j2_;
};

/// det of a 4x4 over any ring (cofactor expansion; T = double or a jet).
template <class T>
T det4(const Mat4<T>& m) {
  T det = T(0.0);
  for (int c0 = 0; c0 < 4; ++c0) {
    // 3x3 minor over columns != c0
    int cols[3], n = 0;
    for (int c = 0; c < 4; ++c)
      if (c != c0) cols[n++] = c;
    T minor = m[1][cols[0]] * (m[2][cols[1]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[1]]) -
              m[1][cols[1]] * (m[2][cols[0]] * m[3][cols[2]] - m[2][cols[2]] * m[3][cols[0]]) +
              m[1][cols[2]] * (m[2][cols[0]] * m[3][cols[1]] - m[2][cols[1]] * m[3][cols[0]]);
    T term = m[0][c0] * minor;
    det = (c0 % 2 == 0) ? det + term : det - term;
  }
  return det;
}

/// Inverse of a 4x4 over any ring with partial pivoting on |value|.
Mat4<Jet1> inverse4(const Mat4<Jet1>& m);
Mat4d inverse4(const Mat4d& m);

}  // namespace curv4
