#pragma once

// Catalog of concrete four-geometries as frame fields: the round sphere, the
// triaxial ellipsoid family, the SU(2)xU(1) biaxial family, the Page space,
// and the S^2 x S^2 product.

#include <string>

#include "curv4/frame.hpp"
#include "curv4/jets.hpp"

namespace curv4 {

/// Unique positive root of nu^4 + 4nu^3 - 6nu^2 + 12nu - 3 on (0,1),
/// residual below 1e-14.
double page_nu();

struct PageParams {
  double nu;
  double lambda;      // Einstein constant; default 3(1+nu^2)/(3+nu^2)
  double psi_period;  // fiber period; 4*pi closes the metric smoothly at the bolts

  static PageParams standard();

  double U(double chi) const;
  double dU(double chi) const;

  /// Diagonal curvature components psi^1_(s), psi^3_(s); s = +1 or -1 picks
  /// the chirality. Closed forms used as cross-validation targets.
  double psi1(double chi, int s) const;
  double psi3(double chi, int s) const;

  void validate() const;
};

/// Round S^4 of given radius on the biaxial chart, f = g = radius*sin(r/radius).
FrameField round_s4(double radius);

/// Triaxial ellipsoid x0^2/r^2 + (x1^2+x2^2)/l^2 + (x3^2+x4^2)/lt^2 = 1.
FrameField ellipsoid_s4(double r, double l, double lt);

/// Auxiliary functions of the ellipsoid frame (exposed for tests and for the
/// closed-form curvature expressions).
struct EllipsoidAux {
  double f, g, h, psi;  // psi = cos(rho) / (g f^2)
};
EllipsoidAux ellipsoid_aux(double r, double l, double lt, double rho, double theta);

/// Biaxial family ds^2 = dr^2 + (f/2)^2 dOmega_2 + (g/2)^2 (dpsi + cos th dphi)^2
/// on r in [0, r_max]; profiles must be positive on the interior.
FrameField biaxial_s4(const Profile& f, const Profile& g, double r_max = kPi);

FrameField page_space(const PageParams& params = PageParams::standard());

FrameField s2xs2(double r1, double r2);

/// Resolves a geometry id ("round-s4", "ellipsoid-s4", "biaxial-s4", "page",
/// "s2xs2", "deformed-s4") plus parameters to a catalog entry.
FrameField make_geometry(const std::string& id, const Params& params);

}  // namespace curv4
