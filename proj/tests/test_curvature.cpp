#include <doctest.h>

#include <cmath>
#include <random>

#include "curv4/curvature.hpp"
#include "curv4/geometry.hpp"

using namespace curv4;

TEST_SUITE_BEGIN("curvature");

namespace {

Vec4 random_interior(const Chart& ch, std::mt19937_64& rng, double margin = 0.08) {
  std::uniform_real_distribution<double> u(margin, 1.0 - margin);
  Vec4 x;
  for (int i = 0; i < 4; ++i)
    x[i] = ch.lower[i] + u(rng) * (ch.upper[i] - ch.lower[i]);
  return x;
}

}  // namespace

TEST_CASE("round sphere field strengths are half the basis forms") {
  FrameField s4 = round_s4(1.0);
  std::mt19937_64 rng(1);
  for (int n = 0; n < 5; ++n) {
    Vec4 x = random_interior(s4.chart(), rng);
    FieldStrengths fs = field_strengths(s4, x);
    for (int i = 0; i < 3; ++i) {
      TwoForm zp = zeta_plus(i), zm = zeta_minus(i);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          CHECK(fs.fplus[i](a, b) == doctest::Approx(0.5 * zp.comp[a][b]).epsilon(1e-10));
          CHECK(fs.fminus[i](a, b) == doctest::Approx(0.5 * zm.comp[a][b]).epsilon(1e-10));
        }
    }
  }
}

TEST_CASE("ellipsoid F3 closed form") {
  // F^(+-)3 = r^2/(2 f^2 g^2) (e1^e2 +- (l^2 lt^2)/(f^2 g^2) e3^e4)
  double r = 1.0, l = 1.0, lt = 2.0;
  FrameField ell = ellipsoid_s4(r, l, lt);
  Vec4 x{1.3, 2.1, kPi / 4, kPi / 2};  // (phi, chi, theta, rho)
  EllipsoidAux aux = ellipsoid_aux(r, l, lt, x[3], x[2]);
  double pre = r * r / (2.0 * sq(aux.f) * sq(aux.g));
  double ratio = sq(l * lt) / (sq(aux.f) * sq(aux.g));
  FieldStrengths fs = field_strengths(ell, x);
  CHECK(fs.fplus[2](0, 1) == doctest::Approx(pre).epsilon(1e-10));
  CHECK(fs.fplus[2](2, 3) == doctest::Approx(pre * ratio).epsilon(1e-10));
  CHECK(fs.fminus[2](0, 1) == doctest::Approx(pre).epsilon(1e-10));
  CHECK(fs.fminus[2](2, 3) == doctest::Approx(-pre * ratio).epsilon(1e-10));
}

TEST_CASE("ellipsoid deformation coefficients match the closed forms") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> up(0.6, 1.6);
  for (int trial = 0; trial < 10; ++trial) {
    double r = up(rng), l = up(rng), lt = up(rng);
    FrameField ell = ellipsoid_s4(r, l, lt);
    for (int n = 0; n < 50; ++n) {
      Vec4 x = random_interior(ell.chart(), rng);
      double rho = x[3], th = x[2];
      EllipsoidAux a = ellipsoid_aux(r, l, lt, rho, th);
      double f = a.f, g = a.g, h = a.h, psi = a.psi;
      double sr = std::sin(rho);
      double s2t = std::sin(2.0 * th);
      double l2 = l * l, lt2 = lt * lt, r2 = r * r;
      double common = r2 / (g * g * g) * sr * sr +
                      h * h / (g * g * g * sq(f * f)) *
                          (2.0 * g * g * f * f - l2 * lt2 * sq(std::cos(rho))) -
                      (lt2 - l2) * h / (2.0 * f) * psi * s2t;
      double f11 = -lt2 / (4.0 * g * f * f * sr * sr) * common + l2 * r2 / (4.0 * sq(f * f) * g * g);
      double f22 = -l2 / (4.0 * g * f * f * sr * sr) * common + lt2 * r2 / (4.0 * sq(f * f) * g * g);
      double f33 = r2 / (4.0 * f * f * g * g) * (1.0 - l2 * lt2 / (f * f * g * g));
      double f12core = h / (g * g * g * f * f * f) *
                           (2.0 * g * g * f * f - l2 * lt2 * sq(std::cos(rho))) -
                       (lt2 - l2) / 2.0 * psi * s2t + r2 * h / (f * g * g * g) * sr * sr;
      double f12 = (l2 + lt2) / (8.0 * f * f * f * sr * sr) * f12core;

      CurvatureCoeffs c = decompose(field_strengths(ell, x));
      CHECK(c.fpm[0][0] == doctest::Approx(f11).epsilon(1e-8));
      CHECK(c.fpm[1][1] == doctest::Approx(f22).epsilon(1e-8));
      CHECK(c.fpm[2][2] == doctest::Approx(f33).epsilon(1e-8));
      CHECK(c.fpm[0][1] == doctest::Approx(f12).epsilon(1e-8));
      CHECK(c.fmp[0][1] == doctest::Approx(-f12).epsilon(1e-8));
      // vanishing pattern
      CHECK(std::abs(c.fpm[0][2]) < 1e-9);
      CHECK(std::abs(c.fpm[1][2]) < 1e-9);
      CHECK(std::abs(c.fpm[2][0]) < 1e-9);
      CHECK(std::abs(c.fpm[2][1]) < 1e-9);
      // Bianchi: fpm = fmp^T
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(c.fpm[i][j] == doctest::Approx(c.fmp[j][i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("einstein residual vanishes exactly at the round point") {
  std::mt19937_64 rng(41);
  FrameField round = ellipsoid_s4(1.1, 1.1, 1.1);
  for (int n = 0; n < 10; ++n) {
    CurvatureCoeffs c = decompose(field_strengths(round, random_interior(round.chart(), rng)));
    CHECK(einstein_residual(c) < 1e-12);
  }
  FrameField off = ellipsoid_s4(1.0, 1.0, 1.2);
  Vec4 x{1.0, 2.0, kPi / 5, kPi / 3};
  CurvatureCoeffs c = decompose(field_strengths(off, x));
  CHECK(einstein_residual(c) > 1e-3);
  // residual agrees with the trace-free Ricci deviation up to index algebra
  Mat4d ric = c.ricci();
  double dev = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      dev = std::max(dev, std::abs(ric[a][b] - (a == b ? c.scalar() / 4.0 : 0.0)));
  CHECK(dev > 1e-3);
  CHECK(einstein_residual(c) <= dev);
}

TEST_CASE("instanton density closed forms") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> up(0.7, 1.5);
  for (int trial = 0; trial < 5; ++trial) {
    double r = up(rng), l = up(rng), lt = up(rng);
    FrameField ell = ellipsoid_s4(r, l, lt);
    Vec4 x = random_interior(ell.chart(), rng);
    EllipsoidAux a = ellipsoid_aux(r, l, lt, x[3], x[2]);
    double want = 0.75 * sq(l * lt) * sq(sq(r)) / (std::pow(a.f, 6) * std::pow(a.g, 6));
    auto [rp, rm] = instanton_density(field_strengths(ell, x));
    CHECK(rp == doctest::Approx(want).epsilon(1e-8));
    CHECK(rm == doctest::Approx(want).epsilon(1e-8));
  }
  for (double radius : {1.0, 2.0}) {
    FrameField s4 = round_s4(radius);
    Vec4 x{1.0, 1.0, 2.0, 1.4 * radius};
    auto [rp, rm] = instanton_density(field_strengths(s4, x));
    CHECK(rp == doctest::Approx(0.75 / std::pow(radius, 4)).epsilon(1e-9));
    CHECK(rm == doctest::Approx(0.75 / std::pow(radius, 4)).epsilon(1e-9));
  }
  // flat space: zero
  Chart chart{{"x", "y", "z", "w"}, {-1, -1, -1, -1}, {1, 1, 1, 1},
              {false, false, false, false}, ""};
  auto eval = []<class T>(const std::array<T, 4>&) -> Mat4<T> {
    Mat4<T> e{};
    for (int i = 0; i < 4; ++i) e[i][i] = T(1.0);
    return e;
  };
  FrameField flat("flat", chart, {}, eval);
  auto [rp, rm] = instanton_density(field_strengths(flat, {0.1, 0.2, 0.3, 0.4}));
  CHECK(rp == 0.0);
  CHECK(rm == 0.0);
}

TEST_CASE("instanton density equals the block Frobenius combination") {
  std::mt19937_64 rng(47);
  FrameField ell = ellipsoid_s4(1.0, 1.3, 0.8);
  for (int n = 0; n < 10; ++n) {
    FieldStrengths fs = field_strengths(ell, random_interior(ell.chart(), rng));
    CurvatureCoeffs c = decompose(fs);
    auto frob2 = [](const Mat3d& m) {
      double s = 0;
      for (const auto& row : m)
        for (double v : row) s += v * v;
      return s;
    };
    auto [rp, rm] = instanton_density(fs);
    CHECK(rp == doctest::Approx(frob2(c.fpp) - frob2(c.fpm)).epsilon(1e-10));
    CHECK(rm == doctest::Approx(frob2(c.fmm) - frob2(c.fmp)).epsilon(1e-10));
  }
}

TEST_CASE("weyl blocks") {
  // round sphere: conformally flat at any radius
  std::mt19937_64 rng(53);
  for (double radius : {1.0, 2.0}) {
    FrameField s4 = round_s4(radius);
    CurvatureCoeffs c = decompose(field_strengths(s4, random_interior(s4.chart(), rng)));
    auto [wp, wm] = c.weyl_blocks();
    CHECK(max_abs3x3(wp) < 1e-12);
    CHECK(max_abs3x3(wm) < 1e-12);
    CHECK(std::abs(trace3(wp)) < 1e-13);
  }

  // page: diagonal with exactly two distinct eigenvalues (2+1 pattern)
  FrameField page = page_space();
  PageParams pp = PageParams::standard();
  for (int n = 0; n < 10; ++n) {
    Vec4 x = random_interior(page.chart(), rng);
    CurvatureCoeffs c = decompose(field_strengths(page, x));
    auto [wp, wm] = c.weyl_blocks();
    double chi = x[3];
    double dpsi_p = pp.psi1(chi, +1) - pp.psi3(chi, +1);
    double dpsi_m = pp.psi1(chi, -1) - pp.psi3(chi, -1);
    CHECK(wp[0][0] == doctest::Approx(dpsi_p / 3.0).epsilon(1e-9));
    CHECK(wp[2][2] == doctest::Approx(-2.0 * dpsi_p / 3.0).epsilon(1e-9));
    CHECK(wp[1][1] == doctest::Approx(wp[0][0]).epsilon(1e-12));
    CHECK(wm[0][0] == doctest::Approx(-dpsi_m / 3.0).epsilon(1e-9));
    CHECK(wm[2][2] == doctest::Approx(2.0 * dpsi_m / 3.0).epsilon(1e-9));
    CHECK(std::abs(wp[0][0] - wp[2][2]) > 1e-3);  // genuinely two eigenvalues
  }

  // s2xs2: (K/6) diag(-1,-1,2) on both chiralities
  FrameField prod = s2xs2(1.0, 1.0);
  CurvatureCoeffs c = decompose(field_strengths(prod, {1.0, 0.5, 2.0, 1.5}));
  auto [wp, wm] = c.weyl_blocks();
  for (int i = 0; i < 3; ++i) {
    double want = (i == 2 ? 2.0 : -1.0) / 6.0;
    CHECK(wp[i][i] == doctest::Approx(want).epsilon(1e-11));
    CHECK(wm[i][i] == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("riemann reconstruction and bianchi identities across the catalog") {
  std::mt19937_64 rng(59);
  std::vector<FrameField> frames;
  frames.push_back(round_s4(1.0));
  frames.push_back(ellipsoid_s4(1.0, 1.2, 0.9));
  frames.push_back(page_space());
  frames.push_back(s2xs2(1.0, 1.6));
  for (const auto& fr : frames)
    for (int n = 0; n < 12; ++n) {
      Vec4 x = random_interior(fr.chart(), rng);
      FieldStrengths fs = field_strengths(fr, x);
      CurvatureCoeffs c = decompose(fs);
      CHECK(c.bianchi_defect() < 1e-9);
      auto rg = riemann_from_gauge(fs);
      auto rc = riemann_from_coeffs(c);
      double dev = 0.0, pair_sym = 0.0, cyclic = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) {
              dev = std::max(dev, std::abs(riem_at(rg, a, b)[p][q] -
                                           riem_at(rc, a, b)[p][q]));
              pair_sym = std::max(pair_sym, std::abs(riem_at(rg, a, b)[p][q] -
                                                     riem_at(rg, p, q)[a][b]));
              cyclic = std::max(
                  cyclic, std::abs(riem_at(rg, a, b)[p][q] + riem_at(rg, a, p)[q][b] +
                                   riem_at(rg, a, q)[b][p]));
            }
      CHECK(dev < 1e-9);
      CHECK(pair_sym < 1e-9);
      CHECK(cyclic < 1e-9);
      // ricci consistency: contraction vs block formula
      Mat4d direct = ricci_contraction(rg);
      Mat4d blocks = c.ricci();
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          CHECK(direct[p][q] == doctest::Approx(blocks[p][q]).epsilon(1e-9));
    }
}

TEST_CASE("einstein implies self-dual field strengths (Lemma 2.1)") {
  std::mt19937_64 rng(61);
  std::vector<FrameField> frames;
  frames.push_back(round_s4(1.0));
  frames.push_back(page_space());
  frames.push_back(s2xs2(1.0, 1.0));
  for (const auto& fr : frames)
    for (int n = 0; n < 8; ++n) {
      Vec4 x = random_interior(fr.chart(), rng);
      FieldStrengths fs = field_strengths(fr, x);
      CurvatureCoeffs c = decompose(fs);
      REQUIRE(einstein_residual(c) < 1e-9);
      double lam = c.lambda_est();
      double wedge_p = 0.0, wedge_m = 0.0;
      for (int i = 0; i < 3; ++i) {
        TwoForm dp = hodge_dual(fs.fplus[i]) - fs.fplus[i];
        TwoForm dm = hodge_dual(fs.fminus[i]) + fs.fminus[i];
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            CHECK(std::abs(dp.comp[a][b]) < 1e-8);
            CHECK(std::abs(dm.comp[a][b]) < 1e-8);
          }
        wedge_p += wedge4(fs.fplus[i], zeta_plus(i));
        wedge_m += wedge4(fs.fminus[i], zeta_minus(i));
      }
      // F^(+-)i ^ zeta^i_+- = +- lambda dmu with lambda = R/4
      CHECK(wedge_p == doctest::Approx(lam).epsilon(1e-8));
      CHECK(wedge_m == doctest::Approx(-lam).epsilon(1e-8));
    }
}

TEST_SUITE_END();
