#include <doctest.h>

#include <complex>
#include <random>

#include "curv4/algebra.hpp"

using namespace curv4;

TEST_SUITE_BEGIN("algebra");

TEST_CASE("table entries match the canonical 2-form basis") {
  const auto& t = thooft();
  // zeta^3_+ = e1^e2 + e3^e4 (1-based), zeta^1_- flips the e1^e4 sign
  CHECK(t.eta[2][0][1] == 1);
  CHECK(t.eta[2][2][3] == 1);
  CHECK(t.etabar[0][0][3] == -1);
  CHECK(t.etabar[0][1][2] == 1);
  CHECK(t.eta[0][1][2] == 1);
  CHECK(t.eta[0][0][3] == 1);
  CHECK(t.eta[1][2][0] == 1);
  CHECK(t.eta[1][1][3] == 1);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(t.eta[i][a][b] == -t.eta[i][b][a]);
        CHECK(t.etabar[i][a][b] == -t.etabar[i][b][a]);
        CHECK(std::abs(t.eta[i][a][b]) <= 1);
        // etabar flips exactly the entries touching the 4th leg
        int flip = (a == 3 || b == 3) ? -1 : 1;
        CHECK(t.etabar[i][a][b] == flip * t.eta[i][a][b]);
      }
}

TEST_CASE("self-duality and normalization hold in integer arithmetic") {
  const auto& t = thooft();
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        int de = 0, db = 0;
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d) {
            de += eps4(a, b, c, d) * t.eta[i][c][d];
            db += eps4(a, b, c, d) * t.etabar[i][c][d];
          }
        CHECK(de == 2 * t.eta[i][a][b]);
        CHECK(db == -2 * t.etabar[i][a][b]);
      }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int ee = 0, bb = 0, eb = 0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          ee += t.eta[i][a][b] * t.eta[j][a][b];
          bb += t.etabar[i][a][b] * t.etabar[j][a][b];
          eb += t.eta[i][a][b] * t.etabar[j][a][b];
        }
      CHECK(ee == (i == j ? 4 : 0));
      CHECK(bb == (i == j ? 4 : 0));
      CHECK(eb == 0);
    }
}

TEST_CASE("hodge dual fixes the basis and squares to one") {
  for (int i = 0; i < 3; ++i) {
    TwoForm zp = zeta_plus(i), zm = zeta_minus(i);
    TwoForm hp = hodge_dual(zp), hm = hodge_dual(zm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        CHECK(hp.comp[a][b] == doctest::Approx(zp.comp[a][b]).epsilon(0));
        CHECK(hm.comp[a][b] == doctest::Approx(-zm.comp[a][b]).epsilon(0));
      }
  }
  TwoForm f;
  f.set(0, 1, 1.0);  // e1^e2 maps to e3^e4 under eps_{1234} = +1
  TwoForm h = hodge_dual(f);
  CHECK(h.comp[2][3] == 1.0);
  CHECK(h.comp[0][1] == 0.0);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  TwoForm g;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.set(a, b, u(rng));
  TwoForm gg = hodge_dual(hodge_dual(g));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(gg.comp[a][b] == g.comp[a][b]);
}

TEST_CASE("intersection relation") {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(wedge4(zeta_plus(i), zeta_plus(j)) == (i == j ? 2.0 : 0.0));
      CHECK(wedge4(zeta_minus(i), zeta_minus(j)) == (i == j ? -2.0 : 0.0));
      CHECK(wedge4(zeta_plus(i), zeta_minus(j)) == 0.0);
    }
}

TEST_CASE("projection coefficients") {
  auto [cp, cm] = project_sd(zeta_plus(0));
  CHECK(cp[0] == 1.0);
  CHECK(cp[1] == 0.0);
  CHECK(cp[2] == 0.0);
  CHECK(cm[0] == 0.0);
  CHECK(cm[1] == 0.0);
  CHECK(cm[2] == 0.0);

  TwoForm f;
  f.set(0, 1, 1.0);  // e1^e2 = (zeta^3_+ + zeta^3_-)/2
  auto [p, m] = project_sd(f);
  CHECK(p[2] == 0.5);
  CHECK(m[2] == 0.5);
  CHECK(p[0] == 0.0);
  CHECK(m[1] == 0.0);
}

TEST_CASE("projection + reconstruction is the identity on antisymmetric arrays") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n = 0; n < 100; ++n) {
    TwoForm f;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) f.set(a, b, u(rng));
    auto [cp, cm] = project_sd(f);
    TwoForm back = reconstruct_sd(cp, cm);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(back.comp[a][b] == doctest::Approx(f.comp[a][b]).epsilon(1e-15));
  }
}

namespace {

// 2x2 complex blocks; quaternionic representation sigma_a = (-i tau_a, 1)
using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;
using M4 = std::array<std::array<C, 4>, 4>;

M2 tau(int i) {
  const C I(0, 1);
  if (i == 0) return {{{C(0), C(1)}, {C(1), C(0)}}};
  if (i == 1) return {{{C(0), -I}, {I, C(0)}}};
  return {{{C(1), C(0)}, {C(0), C(-1)}}};
}

M4 mul(const M4& a, const M4& b) {
  M4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

M4 gamma(int a) {
  // off-diagonal blocks [[0, sigma_a], [sigmabar_a, 0]]
  const C I(0, 1);
  M4 g{};
  M2 s{}, sb{};
  if (a < 3) {
    M2 t = tau(a);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        s[i][j] = -I * t[i][j];
        sb[i][j] = I * t[i][j];
      }
  } else {
    s[0][0] = s[1][1] = C(1);
    sb = s;
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      g[i][j + 2] = s[i][j];
      g[i + 2][j] = sb[i][j];
    }
  return g;
}

}  // namespace

TEST_CASE("tables regenerate from an explicit Clifford representation") {
  // J_ab = [gamma_a, gamma_b]/4, projected with P+- = (1 -+ gamma5)/2 where
  // gamma5 = -gamma1 gamma2 gamma3 gamma4; expansion coefficients in the
  // Pauli basis must reproduce the stored tables entry by entry.
  M4 g5 = mul(mul(gamma(0), gamma(1)), mul(gamma(2), gamma(3)));
  for (auto& row : g5)
    for (auto& z : row) z = -z;
  // chiral blocks: P+ projects onto the lower 2x2 in this representation
  const auto& t = thooft();
  const C I(0, 1);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      M4 ab = mul(gamma(a), gamma(b)), ba = mul(gamma(b), gamma(a));
      M4 J{};
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) J[i][j] = 0.25 * (ab[i][j] - ba[i][j]);
      for (int i = 0; i < 3; ++i) {
        M2 tt = tau(i);
        C trp(0), trm(0);
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) {
            trp += J[p + 2][q + 2] * tt[q][p];  // + chirality block
            trm += J[p][q] * tt[q][p];          // - chirality block
          }
        C eta = -I * trp, etabar = -I * trm;
        CHECK(eta.real() == doctest::Approx((double)t.eta[i][a][b]).epsilon(1e-14));
        CHECK(eta.imag() == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(etabar.real() == doctest::Approx((double)t.etabar[i][a][b]).epsilon(1e-14));
      }
    }
  // orientation sanity: gamma5 is diagonal (-1,-1,+1,+1)
  CHECK(g5[0][0].real() == doctest::Approx(-1.0));
  CHECK(g5[2][2].real() == doctest::Approx(1.0));
}

TEST_SUITE_END();
