#include "curv4/connection.hpp"

#include <cmath>

namespace curv4 {

namespace {

// Lambda^a_{bc} over jets; D[a][mu][nu] = d_mu e^a_nu - d_nu e^a_mu must be
// supplied together with the inverse vierbein of matching order.
template <class T>
std::array<Mat4<T>, 4> anholonomy_from(const std::array<Mat4<T>, 4>& dasym,
                                       const Mat4<T>& einv) {
  std::array<Mat4<T>, 4> lam{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        T s = T(0.0);
        for (int mu = 0; mu < 4; ++mu)
          for (int nu = mu + 1; nu < 4; ++nu)
            s = s + dasym[a][mu][nu] *
                        (einv[mu][b] * einv[nu][c] - einv[nu][b] * einv[mu][c]);
        lam[a][b][c] = s;
        lam[a][c][b] = -s;
      }
  return lam;
}

template <class T>
std::array<Mat4<T>, 4> cartan_connection(const std::array<Mat4<T>, 4>& lam) {
  // om[c][a][b] = 1/2 (Lam_abc + Lam_bca - Lam_cab), antisymmetric in (a,b)
  std::array<Mat4<T>, 4> om{};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        T v = (lam[a][b][c] + lam[b][c][a] - lam[c][a][b]) * 0.5;
        om[c][a][b] = v;
        om[c][b][a] = -v;
      }
  return om;
}

// su(2)+- pairs: A^(+-)i_c = 1/2 (om_{p1,c} +- om_{p2,c}) with
// p1 = (23),(31),(12) and p2 = (14),(24),(34) (0-based below).
constexpr int kPairA[3][2] = {{1, 2}, {2, 0}, {0, 1}};
constexpr int kPairB[3][2] = {{0, 3}, {1, 3}, {2, 3}};

}  // namespace

Anholonomy anholonomy(const FrameField& frame, const Vec4& x) {
  frame.require_interior(x);
  Mat4<Jet1> e = frame.frame_j1(x);
  Mat4d evals{};
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) evals[a][mu] = e[a][mu].v;
  Mat4d einv = inverse4(evals);
  std::array<Mat4d, 4> dasym{};
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu)
        dasym[a][mu][nu] = e[a][nu].d[mu] - e[a][mu].d[nu];
  return anholonomy_from(dasym, einv);
}

SpinConnection spin_connection(const Anholonomy& lam) {
  SpinConnection om;
  om.om = cartan_connection(lam);
  return om;
}

SpinConnection spin_connection(const FrameField& frame, const Vec4& x) {
  return spin_connection(anholonomy(frame, x));
}

GaugeFields split_connection(const SpinConnection& omega) {
  GaugeFields a;
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 4; ++c) {
      double wa = omega(kPairA[i][0], kPairA[i][1], c);
      double wb = omega(kPairB[i][0], kPairB[i][1], c);
      a.aplus[i][c] = 0.5 * (wa + wb);
      a.aminus[i][c] = 0.5 * (wa - wb);
    }
  return a;
}

SpinConnection reconstruct_connection(const GaugeFields& a) {
  const auto& t = thooft();
  SpinConnection om;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q)
      for (int c = 0; c < 4; ++c) {
        double v = 0.0;
        for (int i = 0; i < 3; ++i)
          v += a.aplus[i][c] * t.eta[i][p][q] + a.aminus[i][c] * t.etabar[i][p][q];
        om.set(p, q, c, v);
      }
  return om;
}

double torsion_residual(const FrameField& frame, const SpinConnection& omega, const Vec4& x) {
  Anholonomy lam = anholonomy(frame, x);
  double r = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        double t = lam[a][b][c] - omega(a, b, c) + omega(a, c, b);
        r = std::max(r, std::abs(t));
      }
  return r;
}

GaugePoint gauge_point(const FrameField& frame, const Vec4& x) {
  Mat4<Jet2> e2 = frame.frame_j2(x);

  // first-order views: e and d_nu e, each still carrying one derivative level
  Mat4<Jet1> e1{};
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) e1[a][mu] = e2[a][mu].v;
  std::array<Mat4<Jet1>, 4> dasym{};
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = mu + 1; nu < 4; ++nu) {
        Jet1 d = e2[a][nu].d[mu] - e2[a][mu].d[nu];
        dasym[a][mu][nu] = d;
        dasym[a][nu][mu] = -d;
      }

  Mat4<Jet1> einv = inverse4(e1);
  std::array<Mat4<Jet1>, 4> lam = anholonomy_from(dasym, einv);
  std::array<Mat4<Jet1>, 4> om = cartan_connection(lam);

  // SU(2)+- gauge fields in frame components, then coordinate components
  std::array<std::array<Jet1, 4>, 3> ap{}, am{};
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 4; ++c) {
      Jet1 wa = om[c][kPairA[i][0]][kPairA[i][1]];
      Jet1 wb = om[c][kPairB[i][0]][kPairB[i][1]];
      ap[i][c] = (wa + wb) * 0.5;
      am[i][c] = (wa - wb) * 0.5;
    }

  GaugePoint gp;
  for (int a = 0; a < 4; ++a)
    for (int mu = 0; mu < 4; ++mu) {
      gp.e[a][mu] = e1[a][mu].v;
      gp.einv[a][mu] = einv[a][mu].v;
    }
  gp.det = det4(gp.e);
  gp.omega.om = {};
  for (int c = 0; c < 4; ++c)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) gp.omega.om[c][a][b] = om[c][a][b].v;
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 4; ++c) {
      gp.a.aplus[i][c] = ap[i][c].v;
      gp.a.aminus[i][c] = am[i][c].v;
    }

  // F = dA - eps^{ijk} A^j ^ A^k, assembled chirality by chirality
  auto field = [&](const std::array<std::array<Jet1, 4>, 3>& A,
                   std::array<Mat4d, 3>& F) {
    std::array<std::array<Jet1, 4>, 3> acoord{};
    for (int i = 0; i < 3; ++i)
      for (int mu = 0; mu < 4; ++mu) {
        Jet1 s;
        for (int c = 0; c < 4; ++c) s = s + A[i][c] * e1[c][mu];
        acoord[i][mu] = s;
      }
    for (int i = 0; i < 3; ++i) {
      int j = (i + 1) % 3, k = (i + 2) % 3;
      for (int c = 0; c < 4; ++c)
        for (int d = c + 1; d < 4; ++d) {
          double da = 0.0;
          for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
              da += (acoord[i][nu].d[mu] - acoord[i][mu].d[nu]) * gp.einv[mu][c] *
                    gp.einv[nu][d];
          // eps^{ijk} A^j_c A^k_d antisymmetrized carries a factor 2
          double wedge = 2.0 * (A[j][c].v * A[k][d].v - A[j][d].v * A[k][c].v);
          double v = da - wedge;
          F[i][c][d] = v;
          F[i][d][c] = -v;
        }
    }
  };
  field(ap, gp.fplus);
  field(am, gp.fminus);
  return gp;
}

}  // namespace curv4
