#include "curv4/algebra.hpp"

namespace curv4 {

int eps4(int a, int b, int c, int d) {
  // parity of the permutation (a,b,c,d) of (0,1,2,3); 0 on repeats
  int p[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (p[i] == p[j]) return 0;
      if (p[i] > p[j]) sign = -sign;
    }
  return sign;
}

namespace {

ThooftTables build_tables() {
  ThooftTables t{};
  // +1 entries of eta^i_ab, 0-based: eta^1_{23}, eta^1_{14}; eta^2_{31},
  // eta^2_{24}; eta^3_{12}, eta^3_{34}  (1-based labels as usual)
  constexpr int plus_entries[6][3] = {
      {0, 1, 2}, {0, 0, 3}, {1, 2, 0}, {1, 1, 3}, {2, 0, 1}, {2, 2, 3},
  };
  for (auto [i, a, b] : plus_entries) {
    t.eta[i][a][b] = 1;
    t.eta[i][b][a] = -1;
    // etabar flips the sign of every entry with a frame index 4 (0-based 3)
    int s = (a == 3 || b == 3) ? -1 : 1;
    t.etabar[i][a][b] = s;
    t.etabar[i][b][a] = -s;
  }
  return t;
}

ThooftTables& mutable_tables() {
  static ThooftTables t = build_tables();
  return t;
}

}  // namespace

const ThooftTables& thooft() { return mutable_tables(); }

namespace testhooks {
void flip_eta_entry() {
  auto& t = mutable_tables();
  t.eta[2][2][3] = -t.eta[2][2][3];
  t.eta[2][3][2] = -t.eta[2][3][2];
}
}  // namespace testhooks

TwoForm TwoForm::operator+(const TwoForm& o) const {
  TwoForm r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.comp[a][b] = comp[a][b] + o.comp[a][b];
  return r;
}

TwoForm TwoForm::operator-(const TwoForm& o) const {
  TwoForm r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.comp[a][b] = comp[a][b] - o.comp[a][b];
  return r;
}

TwoForm TwoForm::operator*(double s) const {
  TwoForm r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) r.comp[a][b] = comp[a][b] * s;
  return r;
}

TwoForm zeta_plus(int i) {
  TwoForm z;
  const auto& t = thooft().eta[i];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) z.comp[a][b] = t[a][b];
  return z;
}

TwoForm zeta_minus(int i) {
  TwoForm z;
  const auto& t = thooft().etabar[i];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) z.comp[a][b] = t[a][b];
  return z;
}

TwoForm hodge_dual(const TwoForm& f) {
  TwoForm r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) s += eps4(a, b, c, d) * f.comp[c][d];
      r.comp[a][b] = 0.5 * s;
    }
  return r;
}

double wedge4(const Mat4d& a, const Mat4d& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) s += eps4(i, j, k, l) * a[i][j] * b[k][l];
  return 0.25 * s;
}

double wedge4(const TwoForm& a, const TwoForm& b) { return wedge4(a.comp, b.comp); }

std::pair<Vec3, Vec3> project_sd(const TwoForm& f) {
  const auto& t = thooft();
  Vec3 cp{}, cm{};
  for (int i = 0; i < 3; ++i) {
    double sp = 0.0, sm = 0.0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        sp += f.comp[a][b] * t.eta[i][a][b];
        sm += f.comp[a][b] * t.etabar[i][a][b];
      }
    cp[i] = 0.25 * sp;
    cm[i] = 0.25 * sm;
  }
  return {cp, cm};
}

TwoForm reconstruct_sd(const Vec3& plus, const Vec3& minus) {
  const auto& t = thooft();
  TwoForm r;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int i = 0; i < 3; ++i)
        s += plus[i] * t.eta[i][a][b] + minus[i] * t.etabar[i][a][b];
      r.comp[a][b] = s;
    }
  return r;
}

}  // namespace curv4
