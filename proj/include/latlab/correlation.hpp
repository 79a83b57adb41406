#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "latlab/height.hpp"

namespace latlab {

// Bounded observable of a lattice with a certified Lipschitz constant for
// the group displacement metric (Frobenius distance to the identity). The
// cusp cutoff makes the support compact: the value vanishes once the
// shortest vector drops below c_cut.
struct Observable {
  std::function<double(const LatticePoint&)> value;
  double sup_bound = 1.0;
  double lipschitz = 0.0;
  double c_cut = 0.0;

  double operator()(const LatticePoint& y) const { return value(y); }
};

namespace detail {

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
inline double smoothstep_inf(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

}  // namespace detail

// Smooth bump of lambda1 rising from 0 at c_cut to 1 at c_cut + width.
inline Observable make_lambda1_bump(double c_cut = 0.1, double width = 0.4) {
  Observable psi;
  psi.c_cut = c_cut;
  psi.sup_bound = 1.0;
  psi.value = [c_cut, width](const LatticePoint& y) {
    return detail::smoothstep_inf((shortest_vector_norm(y.basis) - c_cut) / width);
  };
  return psi;
}

// Empirical Lipschitz constant over random perturbation pairs, inflated 2x.
inline double measure_lipschitz(const Observable& psi, const FlowSpec& spec,
                                int pairs = 1000, std::uint64_t seed = 101) {
  Rng rng(seed);
  const int d = spec.d;
  double worst = 0.0;
  for (int s = 0; s < pairs; ++s) {
    Mat B(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) B(r, c) = rng.normal();
    LatticePoint y(B);
    if (std::abs(y.det()) < 1e-3) continue;
    y.renormalize();
    Mat N = Mat::Zero(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) N(r, c) = rng.normal() * 0.02;
    Mat g = Mat::Identity(d, d) + N;
    g /= std::pow(std::abs(g.determinant()), 1.0 / d);
    const double dist = (g - Mat::Identity(d, d)).norm();
    if (dist < 1e-9) continue;
    const double diff = std::abs(psi(LatticePoint(g * y.basis)) - psi(y));
    worst = std::max(worst, diff / dist);
  }
  return 2.0 * worst;
}

// psi_t(w) = psi(g_t u(w) x) - psi(u(s e_axis) g_t u(w) x).
inline double psi_shifted(const FlowSpec& spec, const LatticePoint& x,
                          const Observable& psi, double s, int axis, double t,
                          const std::vector<double>& w) {
  if (axis < 0 || axis >= spec.chart_dim())
    throw usage_error("psi_shifted: axis out of range");
  const Mat y = spec.g(t) * (spec.u(w) * x.basis);
  LatticePoint p(y);
  p.renormalize();
  std::vector<double> shift(spec.chart_dim(), 0.0);
  shift[axis] = s;
  LatticePoint q(spec.u(shift) * y);
  q.renormalize();
  return psi(p) - psi(q);
}

// Midpoint quadrature of int_{I^m} psi_t(w) psi_l(w) dw. The integrand
// oscillates at scale e^{-b l}, so the caller must size the grid to the
// largest time: points per axis well above e^{b max(t,l)}.
inline double correlation(const FlowSpec& spec, const LatticePoint& x,
                          const Observable& psi, double s, int axis, double t,
                          double l, int points_per_axis) {
  if (!(t > 0.0) || !(l > 0.0))
    throw usage_error("correlation: times must be positive");
  const Box box = Box::unit(spec.chart_dim());
  return box_integral_midpoint(box, points_per_axis, [&](const std::vector<double>& w) {
    return psi_shifted(spec, x, psi, s, axis, t, w) *
           psi_shifted(spec, x, psi, s, axis, l, w);
  });
}

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int dropped_zeros = 0;
  bool degenerate = false; // all values zero: perfect decay
};

// Least squares of log|corr| against the gap; zero values are dropped.
inline DecayFit decay_fit(const std::vector<std::pair<double, double>>& values) {
  if (values.size() < 4) throw usage_error("decay_fit: need at least 4 gaps");
  DecayFit out;
  std::vector<double> xs, ys;
  for (const auto& [gap, corr] : values) {
    const double mag = std::abs(corr);
    if (mag <= 0.0) {
      ++out.dropped_zeros;
      continue;
    }
    xs.push_back(gap);
    ys.push_back(std::log(mag));
  }
  if (xs.empty()) {
    out.degenerate = true;
    return out;
  }
  if (xs.size() < 4)
    throw usage_error("decay_fit: need at least 4 nonzero gaps");
  const LineFit f = fit_line(xs, ys);
  out.slope = f.slope;
  out.intercept = f.intercept;
  out.r2 = f.r2;
  return out;
}

}  // namespace latlab
