#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "latlab/boxes.hpp"
#include "latlab/trajectory.hpp"

namespace latlab {

// Return times of the discrete chain g_{nt} u(w) x to the height sublevel
// {alpha <= l0}, recorded through the nested box partition: the level-n box
// of w returns if its lower-corner representative clears the relaxed
// threshold slack * l0 (the slack absorbs the u([-2,2]^m) comparability of
// points sharing a box).
struct ReturnTrace {
  std::vector<double> w;
  double t = 0.0;
  double l0 = 0.0;
  int horizon = 0;
  std::vector<int> sigma; // sigma[0] = 0, strictly increasing, all <= horizon
  bool censored = false;  // true when the trace ends before another return
};

inline ReturnTrace return_times(const FlowSpec& spec, const HeightParams& params,
                                const LatticePoint& x, double t, double l0,
                                int horizon, const std::vector<double>& w,
                                double slack) {
  ReturnTrace trace;
  trace.w = w;
  trace.t = t;
  trace.l0 = l0;
  trace.horizon = horizon;
  const int m = spec.chart_dim();

  // Reduced basis of g_{nt} u(w) x, advanced exactly one block of time t per
  // level. A box representative w1 at level n differs from w by at most the
  // cell size, so g_{nt} u(w1) x = u(xi) g_{nt} u(w) x with ||xi||_inf <= 2.
  // sigma_0 = 0 requires the starting point inside the sublevel set.
  if (alpha(params, x) > l0)
    throw usage_error("return_times: alpha(x) exceeds l0");
  LatticePoint y(spec.u(w) * x.basis);
  trace.sigma.push_back(0);
  lll_reduce(y.basis);
  y.renormalize();

  std::vector<double> xi(m, 0.0);
  for (int n = 1; n <= horizon; ++n) {
    for (int k = 0; k < spec.d; ++k)
      y.basis.row(k) *= std::exp(spec.exponents[k] * t);
    lll_reduce(y.basis);
    y.renormalize();
    const BoxIndex box = box_of(spec, t, n, w);
    for (int axis = 0; axis < m; ++axis)
      xi[axis] = std::exp(n * t * spec.weights[axis]) * (box.lo[axis] - w[axis]);
    LatticePoint corner(spec.u(xi) * y.basis);
    if (alpha(params, corner) <= slack * l0) trace.sigma.push_back(n);
  }
  trace.censored = trace.sigma.back() < horizon;
  return trace;
}

struct GapTable {
  std::vector<int> q;        // thresholds, starting at 1
  std::vector<double> tail;  // empirical P(gap >= q)
  std::vector<std::int64_t> count; // gaps >= q
  std::int64_t total = 0;
};

inline GapTable gap_statistics(const std::vector<ReturnTrace>& traces) {
  std::vector<int> gaps;
  for (const auto& tr : traces)
    for (std::size_t i = 1; i < tr.sigma.size(); ++i)
      gaps.push_back(tr.sigma[i] - tr.sigma[i - 1]);
  if (gaps.size() < 100)
    throw usage_error("gap_statistics: fewer than 100 uncensored gaps");
  GapTable table;
  table.total = static_cast<std::int64_t>(gaps.size());
  int maxgap = 1;
  for (int g : gaps) maxgap = std::max(maxgap, g);
  for (int q = 1; q <= maxgap; ++q) {
    std::int64_t c = 0;
    for (int g : gaps)
      if (g >= q) ++c;
    table.q.push_back(q);
    table.count.push_back(c);
    table.tail.push_back(static_cast<double>(c) / table.total);
  }
  return table;
}

using MembershipFn = std::function<bool(const Trajectory&)>;

// D_K^n(w): fraction of the discrete orbit g_{it} u(w) x, 0 <= i < n, in K.
inline double occupancy_discrete(const FlowSpec& spec, const LatticePoint& x,
                                 double t, const MembershipFn& in_K, int n,
                                 const std::vector<double>& w) {
  if (n < 1) throw usage_error("occupancy_discrete: n must be >= 1");
  Trajectory traj(spec, x, w);
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    if (in_K(traj)) ++hits;
    if (i + 1 < n) traj.step(t);
  }
  return static_cast<double>(hits) / n;
}

// A_K^T(w) by a left Riemann sum with step dt.
inline double occupancy_continuous(const FlowSpec& spec, const LatticePoint& x,
                                   double T, const MembershipFn& in_K,
                                   const std::vector<double>& w, double dt) {
  if (!(T > 0)) throw usage_error("occupancy_continuous: T must be positive");
  if (!(dt > 0)) throw usage_error("occupancy_continuous: dt must be positive");
  const int steps = std::max(1, static_cast<int>(std::floor(T / dt)));
  Trajectory traj(spec, x, w);
  int hits = 0;
  for (int i = 0; i < steps; ++i) {
    if (in_K(traj)) ++hits;
    if (i + 1 < steps) traj.step(dt);
  }
  return static_cast<double>(hits) / steps;
}

struct ShadowingResult {
  double lhs = 0.0; // int_J psi(g_{(n+1)t} u(w) x) dw
  double rhs = 0.0; // int_J int_{I^m} psi(g_t u(w1) g_{nt} u(w) x) dw1 dw
};

// Both sides of the box-average inequality bridging the time-(n+1)t flow and
// one random-walk step after time nt; requires |J_i| >= e^{-n t b_i}.
inline ShadowingResult shadowing_check(const FlowSpec& spec, const LatticePoint& x,
                                       double t, int n, const Box& J,
                                       const std::function<double(const LatticePoint&)>& psi,
                                       int outer_points = 512, int inner_points = 256) {
  const int m = spec.chart_dim();
  if (J.dim() != m) throw usage_error("shadowing_check: box dimension mismatch");
  for (int i = 0; i < m; ++i) {
    if (J.lo[i] < -1.0 - 1e-12 || J.hi[i] > 1.0 + 1e-12)
      throw usage_error("shadowing_check: box outside I^m");
    if (J.hi[i] - J.lo[i] < std::exp(-n * t * spec.weights[i]) * (1.0 - 1e-12))
      throw usage_error("shadowing_check: box too small for the hypothesis");
  }
  const Mat gt = spec.g(t);
  ShadowingResult res;
  const Box unit = Box::unit(m);
  res.lhs = box_integral_midpoint(J, outer_points, [&](const std::vector<double>& w) {
    LatticePoint y(gt * (spec.g(n * t) * (spec.u(w) * x.basis)));
    y.renormalize();
    return psi(y);
  });
  res.rhs = box_integral_midpoint(J, outer_points, [&](const std::vector<double>& w) {
    LatticePoint y(spec.g(n * t) * (spec.u(w) * x.basis));
    y.renormalize();
    return box_integral_midpoint(unit, inner_points, [&](const std::vector<double>& w1) {
      LatticePoint z(gt * (spec.u(w1) * y.basis));
      z.renormalize();
      return psi(z);
    });
  });
  return res;
}

struct ContinuousTailConstants {
  double a = 0.0;
  double C = 0.0;
  double T0 = 0.0;
};

// Converts the discrete tail 2^m a0^n into the continuous tail C a^T.
inline ContinuousTailConstants tail_to_continuous(double a0, double t, int m,
                                                  double eps0) {
  if (!(a0 > 0.0 && a0 < 1.0))
    throw usage_error("tail_to_continuous: a0 must lie in (0,1)");
  if (!(eps0 > 0.0 && eps0 < 0.5))
    throw usage_error("tail_to_continuous: eps0 must lie in (0,1/2)");
  if (!(t > 0.0)) throw usage_error("tail_to_continuous: t must be positive");
  ContinuousTailConstants out;
  out.a = std::pow(a0, 1.0 / t);
  out.C = std::pow(2.0, m) / a0;
  out.T0 = 2.0 * t / eps0;
  return out;
}

}  // namespace latlab
