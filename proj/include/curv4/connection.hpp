#pragma once

// From frame field to gauge data: anholonomy coefficients, the torsion-free
// metric spin connection, and its split into SU(2)+- gauge fields. All
// quantities live in frame components at a single point.

#include "curv4/algebra.hpp"
#include "curv4/frame.hpp"
#include "curv4/jets.hpp"

namespace curv4 {

/// omega_{ab,c} with omega_{ab} = omega_{ab,c} e^c; antisymmetric in (a,b).
struct SpinConnection {
  std::array<Mat4d, 4> om{};  // om[c][a][b] = omega_{ab,c}

  double operator()(int a, int b, int c) const { return om[c][a][b]; }
  void set(int a, int b, int c, double v) {
    om[c][a][b] = v;
    om[c][b][a] = -v;
  }
};

/// Frame components of A^(+-)i = A^(+-)i_c e^c.
struct GaugeFields {
  std::array<Vec4, 3> aplus{};   // aplus[i][c]
  std::array<Vec4, 3> aminus{};  // aminus[i][c]
};

/// Anholonomy Lambda^a_{bc} defined by de^a = 1/2 Lambda^a_{bc} e^b ^ e^c.
/// Returned as lam[a][b][c], antisymmetric in (b,c).
using Anholonomy = std::array<Mat4d, 4>;
Anholonomy anholonomy(const FrameField& frame, const Vec4& x);

/// The unique torsion-free metric-compatible connection,
/// omega_{ab,c} = 1/2 (Lambda_{abc} + Lambda_{bca} - Lambda_{cab}).
SpinConnection spin_connection(const FrameField& frame, const Vec4& x);
SpinConnection spin_connection(const Anholonomy& lam);

/// A^(+-)i_c = 1/4 (eta/etabar)^i_{ab} omega_{ab,c}.
GaugeFields split_connection(const SpinConnection& omega);

/// omega_{ab,c} = aplus[i][c] eta^i_{ab} + aminus[i][c] etabar^i_{ab}.
SpinConnection reconstruct_connection(const GaugeFields& a);

/// Max-norm of the torsion 2-form components T^a_{bc} of
/// T^a = de^a + omega^a_b ^ e^b for the supplied connection.
double torsion_residual(const FrameField& frame, const SpinConnection& omega, const Vec4& x);

/// Everything the curvature layer needs at one point: vierbein, its inverse,
/// volume density, connection data, and the SU(2)+- field strengths
/// F^(+-)i_{cd} (frame components, Eq. structure F = dA - eps A^A).
struct GaugePoint {
  Mat4d e{};
  Mat4d einv{};
  double det = 0.0;
  SpinConnection omega;
  GaugeFields a;
  std::array<Mat4d, 3> fplus{};   // fplus[i][c][d]
  std::array<Mat4d, 3> fminus{};  // fminus[i][c][d]
};

GaugePoint gauge_point(const FrameField& frame, const Vec4& x);

}  // namespace curv4
