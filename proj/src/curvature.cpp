#include "curv4/curvature.hpp"

#include <cmath>

namespace curv4 {

FieldStrengths field_strengths(const GaugePoint& gp) {
  FieldStrengths fs;
  for (int i = 0; i < 3; ++i) {
    fs.fplus[i].comp = gp.fplus[i];
    fs.fminus[i].comp = gp.fminus[i];
  }
  return fs;
}

FieldStrengths field_strengths(const FrameField& frame, const Vec4& x) {
  frame.require_interior(x);
  return field_strengths(gauge_point(frame, x));
}

CurvatureCoeffs decompose(const FieldStrengths& fs) {
  const auto& t = thooft();
  CurvatureCoeffs c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          pp += fs.fplus[i](a, b) * t.eta[j][a][b];
          pm += fs.fplus[i](a, b) * t.etabar[j][a][b];
          mp += fs.fminus[i](a, b) * t.eta[j][a][b];
          mm += fs.fminus[i](a, b) * t.etabar[j][a][b];
        }
      c.fpp[i][j] = 0.25 * pp;
      c.fpm[i][j] = 0.25 * pm;
      c.fmp[i][j] = 0.25 * mp;
      c.fmm[i][j] = 0.25 * mm;
    }
  return c;
}

Mat4d CurvatureCoeffs::ricci() const {
  const auto& t = thooft();
  double tr = trace3(fpp) + trace3(fmm);
  Mat4d r{};
  for (int a = 0; a < 4; ++a) {
    r[a][a] = tr;
    for (int b = 0; b < 4; ++b) {
      double cross = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double s = 0.0;
          for (int c = 0; c < 4; ++c) s += t.eta[i][a][c] * t.etabar[j][b][c];
          cross += fpm[i][j] * s;
        }
      r[a][b] += 2.0 * cross;
    }
  }
  return r;
}

std::pair<Mat3d, Mat3d> CurvatureCoeffs::weyl_blocks() const {
  auto traceless = [](const Mat3d& m) {
    Mat3d w = m;
    double t = trace3(m) / 3.0;
    for (int i = 0; i < 3; ++i) w[i][i] -= t;
    return w;
  };
  return {traceless(fpp), traceless(fmm)};
}

double CurvatureCoeffs::bianchi_defect() const {
  double d = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      d = std::max(d, std::abs(fpp[i][j] - fpp[j][i]));
      d = std::max(d, std::abs(fmm[i][j] - fmm[j][i]));
      d = std::max(d, std::abs(fpm[i][j] - fmp[j][i]));
    }
  return std::max(d, std::abs(trace3(fpp) - trace3(fmm)));
}

double einstein_residual(const CurvatureCoeffs& c) {
  return std::max(max_abs3x3(c.fpm), max_abs3x3(c.fmp));
}

std::pair<double, double> instanton_density(const FieldStrengths& fs) {
  // F^(+-)i ^ F^(+-)i = +-2 rho^(+-) dmu with the wedge as a 4-form contraction
  double wp = 0.0, wm = 0.0;
  for (int i = 0; i < 3; ++i) {
    wp += wedge4(fs.fplus[i], fs.fplus[i]);
    wm += wedge4(fs.fminus[i], fs.fminus[i]);
  }
  return {0.5 * wp, -0.5 * wm};
}

std::pair<Mat3d, Mat3d> weyl_blocks(const CurvatureCoeffs& c) { return c.weyl_blocks(); }

std::array<Mat4d, 16> riemann_from_gauge(const FieldStrengths& fs) {
  const auto& t = thooft();
  std::array<Mat4d, 16> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          double v = 0.0;
          for (int i = 0; i < 3; ++i)
            v += fs.fplus[i](c, d) * t.eta[i][a][b] +
                 fs.fminus[i](c, d) * t.etabar[i][a][b];
          riem_at(r, a, b)[c][d] = v;
        }
  return r;
}

std::array<Mat4d, 16> riemann_from_coeffs(const CurvatureCoeffs& c) {
  const auto& t = thooft();
  std::array<Mat4d, 16> r{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q) {
          double v = 0.0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              v += c.fpp[i][j] * t.eta[i][a][b] * t.eta[j][p][q] +
                   c.fpm[i][j] * t.eta[i][a][b] * t.etabar[j][p][q] +
                   c.fmp[i][j] * t.etabar[i][a][b] * t.eta[j][p][q] +
                   c.fmm[i][j] * t.etabar[i][a][b] * t.etabar[j][p][q];
          riem_at(r, a, b)[p][q] = v;
        }
  return r;
}

Mat4d ricci_contraction(const std::array<Mat4d, 16>& riem) {
  Mat4d ric{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int c = 0; c < 4; ++c) s += riem_at(riem, a, c)[b][c];
      ric[a][b] = s;
    }
  return ric;
}

}  // namespace curv4
