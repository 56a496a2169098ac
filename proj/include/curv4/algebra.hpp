#pragma once

// Constant structure tables for the su(2)+ x su(2)- split of so(4): the
// 't Hooft symbols eta^i_ab / etabar^i_ab, the canonical (anti-)self-dual
// 2-form bases they generate, and the index algebra built on them.
// Orientation is fixed globally by eps_{1234} = +1.

#include <array>
#include <utility>

#include "curv4/common.hpp"

namespace curv4 {

/// Totally antisymmetric symbol on four indices, eps_{1234} = +1 (0-based).
int eps4(int a, int b, int c, int d);

struct ThooftTables {
  // eta[i][a][b], etabar[i][a][b]; i = su(2) index, a,b = frame indices.
  std::array<Mat4<int>, 3> eta;
  std::array<Mat4<int>, 3> etabar;
};

/// The constant tables read off zeta^1_± = e2^e3 ± e1^e4, zeta^2_± = e3^e1 ± e2^e4,
/// zeta^3_± = e1^e2 ± e3^e4.
const ThooftTables& thooft();

/// Antisymmetric 2-form components in an orthonormal frame.
struct TwoForm {
  Mat4d comp{};

  double& operator()(int a, int b) { return comp[a][b]; }
  double operator()(int a, int b) const { return comp[a][b]; }

  /// Sets comp[a][b] = v, comp[b][a] = -v.
  void set(int a, int b, double v) {
    comp[a][b] = v;
    comp[b][a] = -v;
  }

  TwoForm operator+(const TwoForm& o) const;
  TwoForm operator-(const TwoForm& o) const;
  TwoForm operator*(double s) const;
};

/// Basis elements zeta^i_+ (self-dual) and zeta^i_- (anti-self-dual), i = 0..2.
TwoForm zeta_plus(int i);
TwoForm zeta_minus(int i);

/// Hodge star on 2-forms: (*F)_ab = 1/2 eps_abcd F_cd. Involutive.
TwoForm hodge_dual(const TwoForm& f);

/// Coefficient of the volume form in A ^ B: 1/4 eps_abcd A_ab B_cd.
double wedge4(const TwoForm& a, const TwoForm& b);
double wedge4(const Mat4d& a, const Mat4d& b);

/// Expansion coefficients c±^i = 1/4 F_ab (eta/etabar)^i_ab, so that
/// F = sum_i c+^i zeta^i_+ + c-^i zeta^i_-.
std::pair<Vec3, Vec3> project_sd(const TwoForm& f);

/// Rebuilds a 2-form from its self-dual/anti-self-dual coefficients.
TwoForm reconstruct_sd(const Vec3& plus, const Vec3& minus);

namespace testhooks {
/// Fault injection for the self-check suite: flips the sign of eta^3_{34},
/// which must trip the self-duality identity. Not for production use.
void flip_eta_entry();
}  // namespace testhooks

}  // namespace curv4
