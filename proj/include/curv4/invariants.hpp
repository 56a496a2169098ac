#pragma once

// Chart quadrature for topological invariants (Euler characteristic,
// Hirzebruch signature, volume) and the pointwise spectral machinery behind
// the Hitchin-Thorpe inequality chain.

#include <vector>

#include "curv4/curvature.hpp"
#include "curv4/frame.hpp"

namespace curv4 {

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

struct QuadratureSpec {
  std::array<int, 4> nodes{16, 16, 16, 16};
  /// Axis whose node count is doubled for the refinement estimate;
  /// -1 picks the axis with the largest count (ties resolved to the last).
  int refine_axis = -1;
  bool with_refine = true;

  static QuadratureSpec uniform(int n, bool refine = true) {
    QuadratureSpec q;
    q.nodes = {n, n, n, n};
    q.with_refine = refine;
    return q;
  }
};

struct TopoReport {
  double chi = 0.0;
  double tau = 0.0;
  double volume = 0.0;
  double chi_refine_delta = 0.0;
  double ht_margin_plus = 0.0;    // (1/pi^2) int (f_(++))^2 dmu
  double ht_margin_minus = 0.0;   // (1/pi^2) int (f_(--))^2 dmu
  double weyl_sq_plus = 0.0;      // (1/pi^2) int (f~_(++))^2 dmu
  double weyl_sq_minus = 0.0;     // (1/pi^2) int (f~_(--))^2 dmu
  double r2_volume_term = 0.0;    // int R^2 dmu / (192 pi^2)
  double lambda_mean = 0.0;       // volume average of R/4
  double max_einstein_residual = 0.0;
  double refined_lhs = 0.0;       // chi - lambda_mean^2 vol / (12 pi^2)
  int chi_nearest = 0;
  int tau_nearest = 0;
  double chi_int_residual = 0.0;
  double tau_int_residual = 0.0;
};

/// chi = int rho_chi dmu, tau = int rho_tau dmu with
/// rho_chi = (rho+ + rho-)/(2 pi^2), rho_tau = (rho+ - rho-)/(3 pi^2);
/// valid for Einstein and non-Einstein geometries alike. Deterministic for
/// any thread count (fixed chunking, pairwise combination).
TopoReport integrate_invariants(const FrameField& frame, const QuadratureSpec& q,
                                int threads = 1);

struct HTMargins {
  double plus = 0.0;   // chi + 3/2 tau
  double minus = 0.0;  // chi - 3/2 tau
  double density_plus = 0.0;   // (1/pi^2) int (f_(++))^2
  double density_minus = 0.0;  // (1/pi^2) int (f_(--))^2
  bool half_flat_plus = false;
  bool half_flat_minus = false;
};

/// The identity chi +- 3/2 tau = (1/pi^2) int (f_(+-+-))^2 dmu, derived for
/// Einstein geometries; throws param_error when the report shows a
/// non-Einstein input.
HTMargins hitchin_thorpe(const TopoReport& report, double einstein_tol = 1e-6);

struct SpectralData {
  Vec3 aplus{}, aminus{};        // block eigenvalues, sorted descending
  Vec3 lambda_vec{}, mu_vec{};   // lambda_i = a+^i + a-^i, mu_i = a+^i - a-^i
  bool sectional_nonneg = false; // all lambda_i >= 0
};

/// Eigen-decomposition of the Einstein curvature blocks; requires
/// einstein_residual(c) below tol.
SpectralData spectral_point(const CurvatureCoeffs& c, double einstein_tol = 1e-8);

struct StrongHTCheck {
  double ratio = 0.0;       // rho_tau / rho_chi
  double rho_chi = 0.0;
  double rho_tau = 0.0;
  bool passes = false;      // rho_tau <= (2/3)^{3/2} rho_chi
  bool vacuous = false;     // rho_chi = 0 (flat point)
};

/// Pointwise strong Hitchin-Thorpe inequality via the density identities
/// |lambda|^2 + |mu|^2 = 4 pi^2 rho_chi and lambda.mu = 3 pi^2 rho_tau.
StrongHTCheck strong_ht_check(const SpectralData& s);

inline constexpr double kStrongHTBound = 0.544331053951817;  // (2/3)^{3/2}

struct RefinedHT {
  double lhs = 0.0;  // chi - lambda^2 vol / (12 pi^2)
  double rhs = 0.0;  // 3/2 |tau|
  bool equality = false;       // conformally half-flat within tolerance
  bool volume_bound_ok = false;  // vol <= 48 pi^2 / lambda^2 (chi <= 4 form)
};

RefinedHT refined_ht(const TopoReport& report, double lambda);

/// Eigenvalues of a symmetric 3x3, descending.
Vec3 sym3_eigenvalues(const Mat3d& m);

}  // namespace curv4
