#include "curv4/invariants.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace curv4 {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw param_error("quadrature needs at least one node per axis");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // P_n(x) and P_n'(x) by the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
    r.nodes[i] = -x;
    r.weights[i] = w;
  }
  if (n % 2 == 1) {
    r.nodes[n / 2] = 0.0;
  }
  return r;
}

namespace {

struct ChunkSums {
  // vol, chi, tau, ht+, ht-, weyl+, weyl-, r2term, lambda*vol
  std::array<double, 9> s{};
  double max_resid = 0.0;

  ChunkSums combine(const ChunkSums& o) const {
    ChunkSums r;
    for (int i = 0; i < 9; ++i) r.s[i] = s[i] + o.s[i];
    r.max_resid = std::max(max_resid, o.max_resid);
    return r;
  }
};

double frob2(const Mat3d& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s += v * v;
  return s;
}

struct GridIntegral {
  double chi = 0.0;
  ChunkSums total;
};

// Tensor-product Gauss-Legendre sweep. Nodes are split into fixed-size chunks
// summed independently and combined in a fixed pairwise tree, so the result
// is bitwise identical for any thread count.
GridIntegral integrate_grid(const FrameField& frame, const std::array<int, 4>& nodes,
                            int threads) {
  const Chart& chart = frame.chart();
  std::array<std::vector<double>, 4> xs, ws;
  for (int ax = 0; ax < 4; ++ax) {
    GaussRule rule = gauss_legendre(nodes[ax]);
    double lo = chart.lower[ax], hi = chart.upper[ax];
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    xs[ax].resize(nodes[ax]);
    ws[ax].resize(nodes[ax]);
    for (int i = 0; i < nodes[ax]; ++i) {
      xs[ax][i] = mid + half * rule.nodes[i];
      ws[ax][i] = half * rule.weights[i];
    }
  }

  const long total_nodes =
      (long)nodes[0] * nodes[1] * nodes[2] * nodes[3];
  const long chunk_size = 2048;
  const long nchunks = (total_nodes + chunk_size - 1) / chunk_size;
  std::vector<ChunkSums> chunks((size_t)nchunks);

  const double inv_pi2 = 1.0 / (kPi * kPi);

  auto run_chunk = [&](long ci) {
    ChunkSums acc;
    long begin = ci * chunk_size;
    long end = std::min(begin + chunk_size, total_nodes);
    for (long n = begin; n < end; ++n) {
      long rem = n;
      int i3 = (int)(rem % nodes[3]);
      rem /= nodes[3];
      int i2 = (int)(rem % nodes[2]);
      rem /= nodes[2];
      int i1 = (int)(rem % nodes[1]);
      int i0 = (int)(rem / nodes[1]);
      Vec4 x{xs[0][i0], xs[1][i1], xs[2][i2], xs[3][i3]};
      double w = ws[0][i0] * ws[1][i1] * ws[2][i2] * ws[3][i3];

      GaugePoint gp = gauge_point(frame, x);
      FieldStrengths fs = field_strengths(gp);
      CurvatureCoeffs c = decompose(fs);
      auto [rho_p, rho_m] = instanton_density(fs);
      double det = gp.det;
      if (!std::isfinite(det) || !std::isfinite(rho_p) || !std::isfinite(rho_m)) {
        std::ostringstream msg;
        msg << "numeric failure at quadrature node (" << i0 << "," << i1 << ","
            << i2 << "," << i3 << ") = (" << x[0] << "," << x[1] << "," << x[2]
            << "," << x[3] << ")";
        throw numeric_error(msg.str());
      }
      double wd = w * det;
      auto [wp, wm] = c.weyl_blocks();
      double scal = c.scalar();
      acc.s[0] += wd;
      acc.s[1] += wd * 0.5 * inv_pi2 * (rho_p + rho_m);
      acc.s[2] += wd * inv_pi2 / 3.0 * (rho_p - rho_m);
      acc.s[3] += wd * inv_pi2 * frob2(c.fpp);
      acc.s[4] += wd * inv_pi2 * frob2(c.fmm);
      acc.s[5] += wd * inv_pi2 * frob2(wp);
      acc.s[6] += wd * inv_pi2 * frob2(wm);
      acc.s[7] += wd * scal * scal / (192.0 * kPi * kPi);
      acc.s[8] += wd * 0.25 * scal;
      acc.max_resid = std::max(acc.max_resid, einstein_residual(c));
    }
    chunks[(size_t)ci] = acc;
  };

  threads = std::max(1, threads);
  if (threads == 1 || nchunks == 1) {
    for (long ci = 0; ci < nchunks; ++ci) run_chunk(ci);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs((size_t)threads);
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (long ci = next.fetch_add(1); ci < nchunks; ci = next.fetch_add(1))
            run_chunk(ci);
        } catch (...) {
          errs[(size_t)t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  // pairwise combination tree over chunk index
  std::vector<ChunkSums> level = std::move(chunks);
  while (level.size() > 1) {
    std::vector<ChunkSums> up((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) up[i / 2] = level[i].combine(level[i + 1]);
    if (level.size() % 2 == 1) up.back() = level.back();
    level = std::move(up);
  }

  GridIntegral g;
  g.total = level.empty() ? ChunkSums{} : level[0];
  g.chi = g.total.s[1];
  return g;
}

}  // namespace

TopoReport integrate_invariants(const FrameField& frame, const QuadratureSpec& q,
                                int threads) {
  for (int n : q.nodes)
    if (n < 2) throw param_error("quadrature needs >= 2 nodes per axis");

  GridIntegral base = integrate_grid(frame, q.nodes, threads);
  const auto& s = base.total.s;

  TopoReport r;
  r.volume = s[0];
  r.chi = s[1];
  r.tau = s[2];
  r.ht_margin_plus = s[3];
  r.ht_margin_minus = s[4];
  r.weyl_sq_plus = s[5];
  r.weyl_sq_minus = s[6];
  r.r2_volume_term = s[7];
  r.lambda_mean = s[8] / s[0];
  r.max_einstein_residual = base.total.max_resid;
  r.refined_lhs = r.chi - sq(r.lambda_mean) * r.volume / (12.0 * kPi * kPi);
  r.chi_nearest = (int)std::lround(r.chi);
  r.tau_nearest = (int)std::lround(r.tau);
  r.chi_int_residual = r.chi - r.chi_nearest;
  r.tau_int_residual = r.tau - r.tau_nearest;

  if (q.with_refine) {
    int axis = q.refine_axis;
    if (axis < 0) {
      axis = 0;
      for (int a = 0; a < 4; ++a)
        if (q.nodes[a] >= q.nodes[axis]) axis = a;
    }
    std::array<int, 4> fine = q.nodes;
    fine[axis] *= 2;
    r.chi_refine_delta = integrate_grid(frame, fine, threads).chi - r.chi;
  }
  return r;
}

HTMargins hitchin_thorpe(const TopoReport& report, double einstein_tol) {
  if (report.max_einstein_residual > einstein_tol)
    throw param_error("hitchin_thorpe margins require an Einstein geometry");
  HTMargins m;
  m.plus = report.chi + 1.5 * report.tau;
  m.minus = report.chi - 1.5 * report.tau;
  m.density_plus = report.ht_margin_plus;
  m.density_minus = report.ht_margin_minus;
  double scale = std::max(1.0, std::abs(report.chi));
  m.half_flat_plus = report.ht_margin_plus < 1e-6 * scale;
  m.half_flat_minus = report.ht_margin_minus < 1e-6 * scale;
  return m;
}

Vec3 sym3_eigenvalues(const Mat3d& m) {
  Eigen::Matrix3d em;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) em(i, j) = m[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(em, Eigen::EigenvaluesOnly);
  Vec3 out{es.eigenvalues()(2), es.eigenvalues()(1), es.eigenvalues()(0)};
  return out;
}

SpectralData spectral_point(const CurvatureCoeffs& c, double einstein_tol) {
  if (einstein_residual(c) > einstein_tol)
    throw param_error("spectral_point requires an Einstein point");
  SpectralData s;
  s.aplus = sym3_eigenvalues(c.fpp);
  s.aminus = sym3_eigenvalues(c.fmm);
  s.sectional_nonneg = true;
  for (int i = 0; i < 3; ++i) {
    s.lambda_vec[i] = s.aplus[i] + s.aminus[i];
    s.mu_vec[i] = s.aplus[i] - s.aminus[i];
    if (s.lambda_vec[i] < -1e-12) s.sectional_nonneg = false;
  }
  return s;
}

StrongHTCheck strong_ht_check(const SpectralData& s) {
  double l2 = 0.0, m2 = 0.0, lm = 0.0;
  for (int i = 0; i < 3; ++i) {
    l2 += sq(s.lambda_vec[i]);
    m2 += sq(s.mu_vec[i]);
    lm += s.lambda_vec[i] * s.mu_vec[i];
  }
  StrongHTCheck out;
  out.rho_chi = (l2 + m2) / (4.0 * kPi * kPi);
  out.rho_tau = lm / (3.0 * kPi * kPi);
  if (out.rho_chi < 1e-14) {
    out.vacuous = true;
    out.passes = true;
    return out;
  }
  out.ratio = out.rho_tau / out.rho_chi;
  out.passes = out.ratio <= kStrongHTBound + 1e-12;
  return out;
}

RefinedHT refined_ht(const TopoReport& report, double lambda) {
  RefinedHT r;
  r.lhs = report.chi - sq(lambda) * report.volume / (12.0 * kPi * kPi);
  r.rhs = 1.5 * std::abs(report.tau);
  r.equality = std::min(report.weyl_sq_plus, report.weyl_sq_minus) < 1e-6;
  r.volume_bound_ok = report.volume <= 48.0 * kPi * kPi / sq(lambda) + 1e-9;
  return r;
}

}  // namespace curv4
