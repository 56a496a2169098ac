#pragma once

// Forward-mode derivative engine. Dual4<T> carries a value and its four
// partials; nesting (Dual4<Dual4<double>>) yields exact second derivatives.
// Frame fields are evaluated over these types, so everything downstream of
// the vierbein (anholonomy, connection, field strengths) gets analytic
// derivatives instead of finite differences.

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "curv4/common.hpp"

namespace curv4 {

template <class T>
struct Dual4 {
  T v{};
  std::array<T, 4> d{};

  Dual4() = default;
  Dual4(double c) : v(c) {}  // NOLINT: constants promote silently
  Dual4(const T& value, const std::array<T, 4>& grad) : v(value), d(grad) {}
};

template <class T>
Dual4<T> operator+(const Dual4<T>& a, const Dual4<T>& b) {
  Dual4<T> r;
  r.v = a.v + b.v;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] + b.d[k];
  return r;
}

template <class T>
Dual4<T> operator-(const Dual4<T>& a, const Dual4<T>& b) {
  Dual4<T> r;
  r.v = a.v - b.v;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] - b.d[k];
  return r;
}

template <class T>
Dual4<T> operator-(const Dual4<T>& a) {
  Dual4<T> r;
  r.v = -a.v;
  for (int k = 0; k < 4; ++k) r.d[k] = -a.d[k];
  return r;
}

template <class T>
Dual4<T> operator*(const Dual4<T>& a, const Dual4<T>& b) {
  Dual4<T> r;
  r.v = a.v * b.v;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
  return r;
}

template <class T>
Dual4<T> operator/(const Dual4<T>& a, const Dual4<T>& b) {
  Dual4<T> r;
  T inv = T(1.0) / b.v;
  r.v = a.v * inv;
  for (int k = 0; k < 4; ++k) r.d[k] = (a.d[k] - r.v * b.d[k]) * inv;
  return r;
}

// mixed scalar forms
template <class T> Dual4<T> operator+(const Dual4<T>& a, double c) { return a + Dual4<T>(c); }
template <class T> Dual4<T> operator+(double c, const Dual4<T>& a) { return Dual4<T>(c) + a; }
template <class T> Dual4<T> operator-(const Dual4<T>& a, double c) { return a - Dual4<T>(c); }
template <class T> Dual4<T> operator-(double c, const Dual4<T>& a) { return Dual4<T>(c) - a; }
template <class T> Dual4<T> operator*(const Dual4<T>& a, double c) {
  Dual4<T> r;
  r.v = a.v * c;
  for (int k = 0; k < 4; ++k) r.d[k] = a.d[k] * c;
  return r;
}
template <class T> Dual4<T> operator*(double c, const Dual4<T>& a) { return a * c; }
template <class T> Dual4<T> operator/(const Dual4<T>& a, double c) { return a * (1.0 / c); }
template <class T> Dual4<T> operator/(double c, const Dual4<T>& a) { return Dual4<T>(c) / a; }

namespace detail {
// chain rule helper: g(a) with dg = gp(a) da
template <class T, class F, class Fp>
Dual4<T> lift(const Dual4<T>& a, F f, Fp fp) {
  Dual4<T> r;
  r.v = f(a.v);
  T s = fp(a.v);
  for (int k = 0; k < 4; ++k) r.d[k] = s * a.d[k];
  return r;
}
}  // namespace detail

inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double exp(double x) { return std::exp(x); }

template <class T>
Dual4<T> sin(const Dual4<T>& a) {
  return detail::lift(a, [](const T& x) { return sin(x); }, [](const T& x) { return cos(x); });
}

template <class T>
Dual4<T> cos(const Dual4<T>& a) {
  return detail::lift(a, [](const T& x) { return cos(x); }, [](const T& x) { return T(0.0) - sin(x); });
}

template <class T>
Dual4<T> sqrt(const Dual4<T>& a) {
  Dual4<T> r;
  r.v = sqrt(a.v);
  T half_inv = T(0.5) / r.v;
  for (int k = 0; k < 4; ++k) r.d[k] = half_inv * a.d[k];
  return r;
}

template <class T>
Dual4<T> exp(const Dual4<T>& a) {
  Dual4<T> r;
  r.v = exp(a.v);
  for (int k = 0; k < 4; ++k) r.d[k] = r.v * a.d[k];
  return r;
}

using Jet1 = Dual4<double>;
using Jet2 = Dual4<Jet1>;

/// Coordinates seeded for one level of differentiation.
inline std::array<Jet1, 4> seed_j1(const Vec4& x) {
  std::array<Jet1, 4> s;
  for (int mu = 0; mu < 4; ++mu) {
    s[mu].v = x[mu];
    s[mu].d[mu] = 1.0;
  }
  return s;
}

/// Coordinates seeded for two levels (value/gradient/Hessian).
inline std::array<Jet2, 4> seed_j2(const Vec4& x) {
  std::array<Jet2, 4> s;
  for (int mu = 0; mu < 4; ++mu) {
    s[mu].v.v = x[mu];
    s[mu].v.d[mu] = 1.0;
    s[mu].d[mu].v = 1.0;
  }
  return s;
}

/// Second-order jet view of a nested dual: value, gradient, symmetric Hessian.
struct Jet2View {
  const Jet2& j;
  double value() const { return j.v.v; }
  double grad(int mu) const { return j.v.d[mu]; }
  double hess(int mu, int nu) const { return j.d[nu].d[mu]; }
};

// ---------------------------------------------------------------------------
// One-variable second-order jets, used for radial profile functions.

struct D2 {
  double f = 0.0, df = 0.0, ddf = 0.0;

  D2() = default;
  D2(double c) : f(c) {}  // NOLINT
  D2(double f_, double df_, double ddf_) : f(f_), df(df_), ddf(ddf_) {}

  static D2 var(double r) { return {r, 1.0, 0.0}; }
};

inline D2 operator+(const D2& a, const D2& b) { return {a.f + b.f, a.df + b.df, a.ddf + b.ddf}; }
inline D2 operator-(const D2& a, const D2& b) { return {a.f - b.f, a.df - b.df, a.ddf - b.ddf}; }
inline D2 operator-(const D2& a) { return {-a.f, -a.df, -a.ddf}; }
inline D2 operator*(const D2& a, const D2& b) {
  return {a.f * b.f, a.df * b.f + a.f * b.df, a.ddf * b.f + 2.0 * a.df * b.df + a.f * b.ddf};
}
inline D2 operator/(const D2& a, const D2& b) {
  double inv = 1.0 / b.f;
  double q = a.f * inv;
  double dq = (a.df - q * b.df) * inv;
  double ddq = (a.ddf - 2.0 * dq * b.df - q * b.ddf) * inv;
  return {q, dq, ddq};
}
inline D2 sin(const D2& a) {
  double s = std::sin(a.f), c = std::cos(a.f);
  return {s, c * a.df, -s * a.df * a.df + c * a.ddf};
}
inline D2 cos(const D2& a) {
  double s = std::sin(a.f), c = std::cos(a.f);
  return {c, -s * a.df, -c * a.df * a.df - s * a.ddf};
}
inline D2 sqrt(const D2& a) {
  double s = std::sqrt(a.f);
  double ds = 0.5 * a.df / s;
  return {s, ds, (0.5 * a.ddf - ds * ds) / s};
}

/// A scalar function of one variable with two derivatives, the form in which
/// radial profiles f(r), g(r) enter the catalog. Composes into the 4d jets so
/// frame evaluation stays exact through second order.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::function<D2(const D2&)> fn) : fn_(std::move(fn)) {}

  D2 jet(double r) const { return fn_(D2::var(r)); }

  double operator()(double r) const { return jet(r).f; }
  double deriv(double r) const { return jet(r).df; }
  double deriv2(double r) const { return jet(r).ddf; }

  Jet1 operator()(const Jet1& r) const {
    D2 c = jet(r.v);
    Jet1 y;
    y.v = c.f;
    for (int k = 0; k < 4; ++k) y.d[k] = c.df * r.d[k];
    return y;
  }

  Jet2 operator()(const Jet2& r) const {
    D2 c = jet(r.v.v);
    Jet1 fv;  // f(r) as an inner jet
    fv.v = c.f;
    for (int k = 0; k < 4; ++k) fv.d[k] = c.df * r.v.d[k];
    Jet1 fp;  // f'(r) as an inner jet
    fp.v = c.df;
    for (int k = 0; k < 4; ++k) fp.d[k] = c.ddf * r.v.d[k];
    Jet2 y;
    y.v = fv;
    for (int k = 0; k < 4; ++k) y.d[k] = fp * r.d[k];
    return y;
  }

 private:
  std::function<D2(const D2&)> fn_;
};

}  // namespace curv4
