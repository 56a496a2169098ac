#include "curv4/geometry.hpp"

#include <cmath>

namespace curv4 {

namespace {

double page_quartic(double nu) {
  return ((nu + 4.0) * nu - 6.0) * nu * nu + 12.0 * nu - 3.0;
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw param_error(std::string(what) + " must be positive");
}

FrameField biaxial_frame(std::string name, Params params, const Profile& f,
                         const Profile& g, double r_max) {
  check_positive(r_max, "biaxial r range");
  for (int k = 1; k < 32; ++k) {
    double r = r_max * k / 32.0;
    if (!(f(r) > 0.0) || !(g(r) > 0.0))
      throw param_error("biaxial profiles must be positive on the chart interior");
  }
  Chart chart{{"theta", "phi", "psi", "r"},
              {0.0, 0.0, 0.0, 0.0},
              {kPi, 2.0 * kPi, 4.0 * kPi, r_max},
              {false, true, true, false},
              "poles theta=0,pi and r=0,r_max"};
  auto eval = [f, g]<class T>(const std::array<T, 4>& x) -> Mat4<T> {
    const T& th = x[0];
    const T& r = x[3];
    T fr = f(r), gr = g(r);
    Mat4<T> e{};
    e[0][0] = fr * 0.5;
    e[1][1] = fr * sin(th) * 0.5;
    e[2][1] = gr * cos(th) * 0.5;
    e[2][2] = gr * 0.5;
    e[3][3] = T(1.0);
    return e;
  };
  return FrameField(std::move(name), chart, std::move(params), eval);
}

}  // namespace

double page_nu() {
  // q(0) = -3, q(1) = +8: bisect to a tight bracket, polish with Newton
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    (page_quartic(mid) < 0.0 ? lo : hi) = mid;
  }
  double nu = 0.5 * (lo + hi);
  for (int i = 0; i < 4; ++i) {
    double q = page_quartic(nu);
    double dq = ((4.0 * nu + 12.0) * nu - 12.0) * nu + 12.0;
    nu -= q / dq;
  }
  return nu;
}

PageParams PageParams::standard() {
  PageParams p{};
  p.nu = page_nu();
  p.lambda = 3.0 * (1.0 + p.nu * p.nu) / (3.0 + p.nu * p.nu);
  p.psi_period = 4.0 * kPi;
  return p;
}

double PageParams::U(double chi) const {
  double nu2 = nu * nu;
  double d = 1.0 - nu2 * sq(std::cos(chi));
  return 1.0 - 2.0 * nu2 * sq(std::sin(chi)) / ((3.0 + nu2) * d);
}

double PageParams::dU(double chi) const {
  double nu2 = nu * nu;
  double d = 1.0 - nu2 * sq(std::cos(chi));
  return -4.0 * nu2 * (1.0 - nu2) * std::sin(chi) * std::cos(chi) / ((3.0 + nu2) * d * d);
}

double PageParams::psi1(double chi, int s) const {
  double nu2 = nu * nu, c = std::cos(chi), sn = std::sin(chi);
  double d = 1.0 - nu2 * c * c;
  double u = U(chi);
  double first = 0.5 * u *
                 (nu * (1.0 - nu2) * c - s * nu2 * (c * c - sn * sn) + s * nu2 * nu2 * c * c * c * c) /
                 (d * d);
  double second = nu * nu2 * (1.0 - nu2) * c * sn * sn / ((3.0 + nu2) * d * d * d) * (1.0 - s * nu * c);
  return first - second;
}

double PageParams::psi3(double chi, int s) const {
  double nu2 = nu * nu, c = std::cos(chi), sn = std::sin(chi);
  double d = 1.0 - nu2 * c * c;
  double u = U(chi);
  double a = -(nu / (2.0 * d)) * (dU(chi) * sn + 2.0 * (1.0 - nu2) * u * c / d);
  double b = (nu / (2.0 * d)) * (4.0 - nu * u * sn * sn * (3.0 + nu2 * c * c) / d);
  return a + s * b;
}

void PageParams::validate() const {
  if (!(nu > 0.0 && nu < 1.0)) throw param_error("page nu must lie in (0,1)");
  if (std::abs(page_quartic(nu)) > 1e-12)
    throw param_error("page nu does not satisfy the quartic");
  check_positive(lambda, "page lambda");
  check_positive(psi_period, "page psi period");
  for (int k = 1; k < 32; ++k)
    if (!(U(kPi * k / 32.0) > 0.0)) throw param_error("page U(chi) not positive");
}

FrameField biaxial_s4(const Profile& f, const Profile& g, double r_max) {
  return biaxial_frame("biaxial-s4", {}, f, g, r_max);
}

FrameField round_s4(double radius) {
  check_positive(radius, "radius");
  Profile s([radius](const D2& r) { return radius * sin(r / radius); });
  return biaxial_frame("round-s4", {{"radius", radius}}, s, s, kPi * radius);
}

EllipsoidAux ellipsoid_aux(double r, double l, double lt, double rho, double theta) {
  EllipsoidAux a{};
  a.f = std::sqrt(sq(l * std::sin(theta)) + sq(lt * std::cos(theta)));
  a.g = std::sqrt(sq(r * std::sin(rho)) + sq(l * lt * std::cos(rho) / a.f));
  a.h = (lt * lt - l * l) / a.f * std::cos(rho) * std::sin(theta) * std::cos(theta);
  a.psi = std::cos(rho) / (a.g * a.f * a.f);
  return a;
}

FrameField ellipsoid_s4(double r, double l, double lt) {
  check_positive(r, "r");
  check_positive(l, "l");
  check_positive(lt, "lt");
  Chart chart{{"phi", "chi", "theta", "rho"},
              {0.0, 0.0, 0.0, 0.0},
              {2.0 * kPi, 2.0 * kPi, kPi / 2.0, kPi},
              {true, true, false, false},
              "theta=0,pi/2 circle degenerations and rho=0,pi poles"};
  auto eval = [r, l, lt]<class T>(const std::array<T, 4>& x) -> Mat4<T> {
    const T& th = x[2];
    const T& rho = x[3];
    T st = sin(th), ct = cos(th);
    T srho = sin(rho), crho = cos(rho);
    T f = sqrt(l * l * st * st + lt * lt * ct * ct);
    T g = sqrt(r * r * srho * srho + (l * lt / f) * (l * lt / f) * crho * crho);
    T h = (lt * lt - l * l) / f * crho * st * ct;
    Mat4<T> e{};
    e[0][0] = l * srho * ct;   // e^1 = sin(rho) * l cos(theta) dphi
    e[1][1] = lt * srho * st;  // e^2 = sin(rho) * lt sin(theta) dchi
    e[2][2] = f * srho;        // e^3 = sin(rho) f dtheta + h drho
    e[2][3] = h;
    e[3][3] = g;               // e^4 = g drho
    return e;
  };
  return FrameField("ellipsoid-s4", chart, {{"r", r}, {"l", l}, {"lt", lt}}, eval);
}

FrameField page_space(const PageParams& params) {
  params.validate();
  double nu = params.nu;
  // overall factor (3/lambda)(1+nu^2)/(3+nu^2); equals 1 at the standard lambda
  double k2 = (3.0 / params.lambda) * (1.0 + nu * nu) / (3.0 + nu * nu);
  double scale = std::sqrt(k2);
  Chart chart{{"theta", "phi", "psi", "chi"},
              {0.0, 0.0, 0.0, 0.0},
              {kPi, 2.0 * kPi, params.psi_period, kPi},
              {false, true, true, false},
              "poles theta=0,pi and bolts chi=0,pi"};
  double nu2 = nu * nu, c3 = 3.0 + nu2;
  auto eval = [nu, nu2, c3, scale]<class T>(const std::array<T, 4>& x) -> Mat4<T> {
    const T& th = x[0];
    const T& chi = x[3];
    T cc = cos(chi), sc = sin(chi);
    T d = 1.0 - nu2 * cc * cc;
    T u = 1.0 - 2.0 * nu2 * sc * sc / (c3 * d);
    T su = sqrt(u);
    T a = sqrt(d * (0.25 / nu)) * scale;
    Mat4<T> e{};
    e[0][0] = a;
    e[1][1] = a * sin(th);
    e[2][1] = su * sc * cos(th) * (0.5 * scale);
    e[2][2] = su * sc * (0.5 * scale);
    e[3][3] = scale / su;
    return e;
  };
  return FrameField("page", chart,
                    {{"nu", nu}, {"lambda", params.lambda}, {"psi_period", params.psi_period}},
                    eval);
}

FrameField s2xs2(double r1, double r2) {
  check_positive(r1, "r1");
  check_positive(r2, "r2");
  Chart chart{{"theta1", "phi1", "theta2", "phi2"},
              {0.0, 0.0, 0.0, 0.0},
              {kPi, 2.0 * kPi, kPi, 2.0 * kPi},
              {false, true, false, true},
              "poles of either sphere"};
  auto eval = [r1, r2]<class T>(const std::array<T, 4>& x) -> Mat4<T> {
    Mat4<T> e{};
    e[0][0] = T(r1);
    e[1][1] = r1 * sin(x[0]);
    e[2][2] = T(r2);
    e[3][3] = r2 * sin(x[2]);
    return e;
  };
  return FrameField("s2xs2", chart, {{"r1", r1}, {"r2", r2}}, eval);
}

namespace {

double get_param(const Params& p, const std::string& key, double fallback,
                 bool required = false) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (required) throw param_error("missing parameter '" + key + "'");
    return fallback;
  }
  return it->second;
}

}  // namespace

FrameField make_geometry(const std::string& id, const Params& params) {
  if (id == "round-s4") return round_s4(get_param(params, "radius", 1.0));
  if (id == "ellipsoid-s4")
    return ellipsoid_s4(get_param(params, "r", 1.0), get_param(params, "l", 1.0),
                        get_param(params, "lt", 1.0));
  if (id == "page") {
    PageParams p = PageParams::standard();
    p.lambda = get_param(params, "lambda", p.lambda);
    p.psi_period = get_param(params, "psi_period", p.psi_period);
    return page_space(p);
  }
  if (id == "s2xs2")
    return s2xs2(get_param(params, "r1", 1.0), get_param(params, "r2", 1.0));
  if (id == "biaxial-s4") {
    // squashed profile f = sin r, g = squash * sin r
    double squash = get_param(params, "squash", 1.0);
    Profile f([](const D2& r) { return sin(r); });
    Profile g([squash](const D2& r) { return squash * sin(r); });
    return biaxial_frame("biaxial-s4", {{"squash", squash}}, f, g, kPi);
  }
  throw param_error("unknown geometry '" + id + "'");
}

}  // namespace curv4
