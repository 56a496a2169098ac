#pragma once

// Irreducible decomposition of the Riemann curvature at a point: the four
// 3x3 blocks f_(++), f_(+-), f_(-+), f_(--) extracted from the SU(2)+-
// field strengths, plus everything derived from them (Ricci, scalar, Weyl
// blocks, instanton densities, the Einstein residual).

#include <utility>

#include "curv4/algebra.hpp"
#include "curv4/connection.hpp"

namespace curv4 {

struct FieldStrengths {
  std::array<TwoForm, 3> fplus;
  std::array<TwoForm, 3> fminus;
};

FieldStrengths field_strengths(const FrameField& frame, const Vec4& x);
FieldStrengths field_strengths(const GaugePoint& gp);

struct CurvatureCoeffs {
  Mat3d fpp{}, fpm{}, fmp{}, fmm{};

  double scalar() const { return 4.0 * (trace3(fpp) + trace3(fmm)); }
  double lambda_est() const { return scalar() / 4.0; }

  /// Ricci tensor R_ab rebuilt from the blocks.
  Mat4d ricci() const;

  /// Traceless Weyl blocks f~_(++) and f~_(--).
  std::pair<Mat3d, Mat3d> weyl_blocks() const;

  /// Bianchi symmetry defect: max deviation from fpp, fmm symmetric and
  /// fpm = fmp^T, plus the trace constraint |tr fpp - tr fmm|.
  double bianchi_defect() const;
};

/// Projects the field strengths on the canonical 2-form bases:
/// f_(+s)^{ij} = 1/4 F^(+)i_{cd} (eta/etabar)^j_{cd} and mirror images.
CurvatureCoeffs decompose(const FieldStrengths& fs);

/// Max |f_(+-)| entry; vanishes exactly at Einstein points. The same
/// information as max |R_ab - (R/4) delta_ab| up to index algebra.
double einstein_residual(const CurvatureCoeffs& c);

/// rho_n^(+-) with F^(+-)i ^ F^(+-)i = +-2 rho^(+-) dmu.
std::pair<double, double> instanton_density(const FieldStrengths& fs);

std::pair<Mat3d, Mat3d> weyl_blocks(const CurvatureCoeffs& c);

/// Riemann tensor from the gauge split R_{ab,cd} = F^(+)i_{cd} eta^i_{ab} + ...
std::array<Mat4d, 16> riemann_from_gauge(const FieldStrengths& fs);

/// Riemann tensor reassembled from the coefficient blocks.
std::array<Mat4d, 16> riemann_from_coeffs(const CurvatureCoeffs& c);

/// Direct Ricci contraction R_ab = R_{acbc} of an assembled Riemann tensor.
Mat4d ricci_contraction(const std::array<Mat4d, 16>& riem);

/// r[(a*4+b)] is the 2-form R_{ab}; helper for the tests above.
inline Mat4d& riem_at(std::array<Mat4d, 16>& r, int a, int b) { return r[a * 4 + b]; }
inline const Mat4d& riem_at(const std::array<Mat4d, 16>& r, int a, int b) {
  return r[a * 4 + b];
}

}  // namespace curv4
