#include <doctest.h>

#include <cmath>
#include <random>

#include "curv4/curvature.hpp"
#include "curv4/geometry.hpp"

using namespace curv4;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("page nu root") {
  double nu = page_nu();
  double q = ((nu + 4.0) * nu - 6.0) * nu * nu + 12.0 * nu - 3.0;
  CHECK(std::abs(q) < 1e-14);
  CHECK(nu == doctest::Approx(0.2817).epsilon(5e-5));  // 4 significant digits
  CHECK(nu == doctest::Approx(0.281701557908774).epsilon(1e-15));

  PageParams p = PageParams::standard();
  CHECK(p.lambda == doctest::Approx(1.0515404998408316).epsilon(1e-14));
  CHECK(p.U(kPi / 2) == doctest::Approx(0.9484595001591684).epsilon(1e-14));
  for (int k = 1; k < 64; ++k) {
    double u = p.U(kPi * k / 64.0);
    CHECK(u > 0.0);
    CHECK(u <= 1.0 + 1e-15);
  }
}

TEST_CASE("round sphere is Einstein with the right scalar curvature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.15, 0.85);
  for (double radius : {1.0, 2.0}) {
    FrameField s4 = round_s4(radius);
    const Chart& ch = s4.chart();
    for (int n = 0; n < 8; ++n) {
      Vec4 x;
      for (int i = 0; i < 4; ++i)
        x[i] = ch.lower[i] + u(rng) * (ch.upper[i] - ch.lower[i]);
      CurvatureCoeffs c = decompose(field_strengths(s4, x));
      CHECK(c.scalar() == doctest::Approx(12.0 / (radius * radius)).epsilon(1e-9));
      CHECK(einstein_residual(c) < 1e-9);
      Mat4d ric = c.ricci();
      for (int a = 0; a < 4; ++a)
        CHECK(ric[a][a] == doctest::Approx(3.0 / (radius * radius)).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(round_s4(-1.0), param_error);
  CHECK_THROWS_AS(round_s4(0.0), param_error);
}

TEST_CASE("ellipsoid auxiliary functions") {
  // (r,l,lt) = (1,1,2) at rho = pi/2, theta = pi/4
  EllipsoidAux a = ellipsoid_aux(1.0, 1.0, 2.0, kPi / 2, kPi / 4);
  CHECK(a.f == doctest::Approx(std::sqrt(2.5)).epsilon(1e-15));
  CHECK(a.h == doctest::Approx(0.0).epsilon(1e-15));
  // g at rho = 0, theta = 0 with (1,2,3): l*lt/f(0) = 6/3
  EllipsoidAux b = ellipsoid_aux(1.0, 2.0, 3.0, 0.0, 0.0);
  CHECK(b.g == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(b.f == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(ellipsoid_s4(1.0, -1.0, 1.0), param_error);
}

TEST_CASE("degenerate ellipsoid is the round sphere") {
  // chart map: rho = r/R, theta_ell = theta/2, phi_ell = (psi+phi)/2,
  // chi_ell = (psi-phi)/2; the induced metrics agree under pullback
  double radius = 1.3;
  FrameField ell = ellipsoid_s4(radius, radius, radius);
  FrameField rnd = round_s4(radius);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 0.8);
  for (int n = 0; n < 12; ++n) {
    Vec4 xb;  // biaxial point (theta, phi, psi, r)
    const Chart& ch = rnd.chart();
    for (int i = 0; i < 4; ++i)
      xb[i] = ch.lower[i] + u(rng) * (ch.upper[i] - ch.lower[i]);
    // ellipsoid chart order is (phi, chi, theta, rho)
    double phi_e = 0.5 * (xb[2] + xb[1]);
    double chi_e = 0.5 * (xb[2] - xb[1]);
    if (chi_e < 0) chi_e += 2.0 * kPi;
    Vec4 xe{std::fmod(phi_e, 2.0 * kPi), chi_e, 0.5 * xb[0], xb[3] / radius};
    Mat4d gb = rnd.metric(xb);
    Mat4d ge = ell.metric(xe);
    // jacobian d(ell)/d(biax)
    Mat4d J{};
    J[0][1] = 0.5;  // dphi_e/dphi
    J[0][2] = 0.5;  // dphi_e/dpsi
    J[1][1] = -0.5;
    J[1][2] = 0.5;
    J[2][0] = 0.5;
    J[3][3] = 1.0 / radius;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        double pulled = 0.0;
        for (int al = 0; al < 4; ++al)
          for (int be = 0; be < 4; ++be) pulled += J[al][mu] * ge[al][be] * J[be][nu];
        CHECK(pulled == doctest::Approx(gb[mu][nu]).epsilon(1e-12));
      }
  }
}

TEST_CASE("frame positivity and orientation across the catalog") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  std::vector<FrameField> frames;
  frames.push_back(round_s4(1.0));
  frames.push_back(ellipsoid_s4(1.0, 1.4, 0.8));
  frames.push_back(page_space());
  frames.push_back(s2xs2(1.0, 2.0));
  for (const auto& fr : frames)
    for (int n = 0; n < 10; ++n) {
      Vec4 x;
      for (int i = 0; i < 4; ++i)
        x[i] = fr.chart().lower[i] +
               u(rng) * (fr.chart().upper[i] - fr.chart().lower[i]);
      CHECK(fr.volume_density(x) > 0.0);
      Mat4d g = fr.metric(x);
      // positive definiteness via leading principal minors
      double m1 = g[0][0];
      double m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
      CHECK(m1 > 0.0);
      CHECK(m2 > 0.0);
      CHECK(det4(g) > 0.0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(g[a][b] == g[b][a]);
    }
}

TEST_CASE("page metric is Einstein with c = 1") {
  FrameField page = page_space();
  PageParams pp = PageParams::standard();
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.08, 0.92);
  for (int n = 0; n < 20; ++n) {
    Vec4 x;
    for (int i = 0; i < 4; ++i)
      x[i] = page.chart().lower[i] +
             u(rng) * (page.chart().upper[i] - page.chart().lower[i]);
    CurvatureCoeffs c = decompose(field_strengths(page, x));
    Mat4d ric = c.ricci();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(ric[a][b] == doctest::Approx(a == b ? pp.lambda : 0.0).epsilon(1e-9));
    CHECK(einstein_residual(c) < 1e-9);
  }
}

TEST_CASE("page with non-standard lambda rescales the Einstein constant") {
  PageParams pp = PageParams::standard();
  pp.lambda = 2.0;
  FrameField page = page_space(pp);
  Vec4 x{0.9, 1.0, 2.0, 1.2};
  CurvatureCoeffs c = decompose(field_strengths(page, x));
  CHECK(c.lambda_est() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(einstein_residual(c) < 1e-9);
}

TEST_CASE("squashed biaxial sphere is not Einstein") {
  Profile f([](const D2& r) { return sin(r); });
  Profile g([](const D2& r) { return 0.5 * sin(r); });
  FrameField squashed = biaxial_s4(f, g);
  Vec4 x{1.2, 0.8, 2.0, kPi / 2};
  CurvatureCoeffs c = decompose(field_strengths(squashed, x));
  CHECK(einstein_residual(c) > 0.01);

  Profile bad([](const D2& r) { return cos(r); });  // vanishes mid-chart
  CHECK_THROWS_AS(biaxial_s4(bad, bad), param_error);
}

TEST_CASE("biaxial deformation with the scaling mode stays Einstein to first order") {
  double eps = 1e-3;
  Profile fg([eps](const D2& r) { return sin(r) + eps * (sin(r) - r * cos(r)); });
  FrameField def = biaxial_s4(fg, fg);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ur(0.2, 0.9);
  std::uniform_real_distribution<double> ut(0.5, kPi - 0.5);
  for (int n = 0; n < 8; ++n) {
    Vec4 x{ut(rng), 1.0, 2.0, ur(rng)};
    CurvatureCoeffs c = decompose(field_strengths(def, x));
    CHECK(einstein_residual(c) < 1e-6);  // O(eps^2)
  }
}

TEST_CASE("s2xs2 curvature blocks") {
  FrameField prod = s2xs2(1.0, 1.0);
  Vec4 x{1.1, 0.7, 1.9, 2.5};
  CurvatureCoeffs c = decompose(field_strengths(prod, x));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double want = (i == 2 && j == 2) ? 0.5 : 0.0;
      CHECK(c.fpp[i][j] == doctest::Approx(want).epsilon(1e-12));
      CHECK(c.fmm[i][j] == doctest::Approx(want).epsilon(1e-12));
      CHECK(std::abs(c.fpm[i][j]) < 1e-12);
    }

  FrameField uneven = s2xs2(1.0, 2.0);
  CurvatureCoeffs cu = decompose(field_strengths(uneven, x));
  // f^{33}_(+-) = (1/r1^2 - 1/r2^2)/4
  CHECK(cu.fpm[2][2] == doctest::Approx((1.0 - 0.25) / 4.0).epsilon(1e-12));
  CHECK(einstein_residual(cu) > 0.1);
}

TEST_CASE("torsion contract holds across the catalog") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.08, 0.92);
  std::vector<FrameField> frames;
  frames.push_back(round_s4(1.0));
  frames.push_back(ellipsoid_s4(1.0, 1.2, 0.7));
  Profile f([](const D2& r) { return sin(r); });
  Profile g([](const D2& r) { return 0.8 * sin(r); });
  frames.push_back(biaxial_s4(f, g));
  frames.push_back(page_space());
  frames.push_back(s2xs2(1.0, 1.7));
  for (const auto& fr : frames)
    for (int n = 0; n < 10; ++n) {
      Vec4 x;
      for (int i = 0; i < 4; ++i)
        x[i] = fr.chart().lower[i] +
               u(rng) * (fr.chart().upper[i] - fr.chart().lower[i]);
      CHECK(torsion_residual(fr, spin_connection(fr, x), x) < 1e-9);
    }
}

TEST_CASE("unknown geometry and bad points are rejected") {
  CHECK_THROWS_AS(make_geometry("klein-bottle", {}), param_error);
  FrameField s4 = round_s4(1.0);
  CHECK_THROWS_AS(s4.require_interior({-1.0, 0.0, 0.0, 0.5}), param_error);
  CHECK_THROWS_AS(s4.require_interior({0.0, 0.0, 0.0, 0.5}), param_error);  // boundary
}

TEST_SUITE_END();
