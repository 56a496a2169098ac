#include "curv4/frame.hpp"

#include <algorithm>
#include <cmath>

namespace curv4 {

int Chart::index_of(const std::string& name) const {
  for (int i = 0; i < 4; ++i)
    if (coord_names[i] == name) return i;
  throw param_error("unknown coordinate '" + name + "'");
}

bool Chart::contains(const Vec4& x) const {
  for (int i = 0; i < 4; ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

bool Chart::interior(const Vec4& x, double margin) const {
  for (int i = 0; i < 4; ++i) {
    double pad = margin * (upper[i] - lower[i]);
    if (x[i] <= lower[i] + pad || x[i] >= upper[i] - pad) return false;
  }
  return true;
}

Mat4d FrameField::metric(const Vec4& x) const {
  Mat4d e = frame(x), g{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      double s = 0.0;
      for (int a = 0; a < 4; ++a) s += e[a][mu] * e[a][nu];
      g[mu][nu] = s;
    }
  return g;
}

double FrameField::volume_density(const Vec4& x) const { return det4(frame(x)); }

void FrameField::require_interior(const Vec4& x) const {
  if (!chart_.contains(x))
    throw param_error("point outside chart of geometry '" + name_ + "'");
  if (!chart_.interior(x))
    throw param_error("point on chart boundary of geometry '" + name_ + "'");
  double det = volume_density(x);
  if (!std::isfinite(det) || std::abs(det) < 1e-14)
    throw numeric_error("degenerate frame at the requested point");
}

namespace {

inline double pivot_size(double x) { return std::abs(x); }
inline double pivot_size(const Jet1& x) { return std::abs(x.v); }

template <class T>
Mat4<T> gauss_inverse(Mat4<T> a) {
  Mat4<T> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = T(1.0);
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (pivot_size(a[r][col]) > pivot_size(a[piv][col])) piv = r;
    if (pivot_size(a[piv][col]) < 1e-300)
      throw numeric_error("degenerate frame: singular vierbein");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    T scale = T(1.0) / a[col][col];
    for (int c = 0; c < 4; ++c) {
      a[col][c] = a[col][c] * scale;
      inv[col][c] = inv[col][c] * scale;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      T factor = a[r][col];
      for (int c = 0; c < 4; ++c) {
        a[r][c] = a[r][c] - factor * a[col][c];
        inv[r][c] = inv[r][c] - factor * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

Mat4<Jet1> inverse4(const Mat4<Jet1>& m) { return gauss_inverse(m); }
Mat4d inverse4(const Mat4d& m) { return gauss_inverse(m); }

}  // namespace curv4
