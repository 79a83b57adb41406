#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "latlab/lattice.hpp"
#include "latlab/quadrature.hpp"
#include "latlab/rep.hpp"

namespace latlab {

// Indices attached to the cusp height on SL_d/SL_d(Z): for each exterior
// degree 0 < i < d, delta[i] = (d-i)i and delta_eta[i] = log of the top
// eigenvalue of g_1 on wedge^i (sum of the i largest flow exponents).
struct HeightParams {
  int d = 0;
  double epsilon = 0.0;
  std::vector<double> delta;     // index 1..d-1 (slot 0 unused)
  std::vector<double> delta_eta; // index 1..d-1
  double sigma = 0.0;            // 1 / min delta_eta
  double sigma1 = 0.0;           // 1 / max delta_eta
};

inline HeightParams make_height_params(const FlowSpec& spec, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw usage_error("make_height_params: epsilon must lie in (0,1)");
  HeightParams p;
  p.d = spec.d;
  p.epsilon = epsilon;
  p.delta.assign(spec.d, 0.0);
  p.delta_eta.assign(spec.d, 0.0);
  std::vector<double> sorted = spec.exponents;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
  for (int i = 1; i < spec.d; ++i) {
    p.delta[i] = static_cast<double>((spec.d - i) * i);
    double top = 0.0;
    for (int k = 0; k < i; ++k) top += sorted[k];
    if (!(top > 0.0))
      throw numeric_error("make_height_params: flow is not expanding on a wedge power");
    p.delta_eta[i] = top;
    mn = std::min(mn, top);
    mx = std::max(mx, top);
  }
  p.sigma = 1.0 / mn;
  p.sigma1 = 1.0 / mx;
  return p;
}

// phi_eps on wedge^i R^d. Each wedge power is SL_d-irreducible, so the
// trivial-component branch never trips and the value is
// eps^{delta_i/delta_eta_i} * ||v||^{-1/delta_eta_i}; +infinity iff v = 0.
inline double phi(const HeightParams& p, const MultiVector& v) {
  const int i = v.degree;
  if (i <= 0 || i >= p.d)
    throw usage_error("phi: degree carries only the trivial representation");
  const double nrm = v.norm();
  if (nrm == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(p.epsilon, p.delta[i] / p.delta_eta[i]) *
         std::pow(nrm, -1.0 / p.delta_eta[i]);
}

inline double phi_of_norm(const HeightParams& p, int i, double nrm) {
  if (nrm == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(p.epsilon, p.delta[i] / p.delta_eta[i]) *
         std::pow(nrm, -1.0 / p.delta_eta[i]);
}

// Height alpha_eps(x) = max over degrees of phi_eps at the shortest
// y-integral monomial, i.e. at the minimal rank-i sublattice covolume.
inline double alpha(const HeightParams& p, const LatticePoint& x) {
  double best = 0.0;
  for (int i = 1; i < p.d; ++i)
    best = std::max(best, phi_of_norm(p, i, minima(x, i)));
  return best;
}

// Estimate of sup_{||v||=1} int_{I^m} ||g_t u(w) v||^{-theta} dw; the sup is
// over coordinate directions plus `v_samples` uniform sphere points. The
// integral is unnormalized Lebesgue on I^m (value 2^m at theta = 0).
inline double contraction_integral(const FlowSpec& spec, const Representation& rep,
                                   double t, double theta,
                                   const QuadratureSpec& quad, int v_samples,
                                   std::uint64_t seed = 7) {
  std::vector<Vec> dirs;
  for (int k = 0; k < rep.dim; ++k) {
    Vec e = Vec::Zero(rep.dim);
    e[k] = 1.0;
    dirs.push_back(e);
  }
  Rng rng(seed);
  for (int s = 0; s < v_samples; ++s) {
    Vec v(rep.dim);
    for (int k = 0; k < rep.dim; ++k) v[k] = rng.normal();
    const double nrm = v.norm();
    if (nrm > 1e-12) dirs.push_back(v / nrm);
  }
  const Mat At = rep.act(spec.g(t));
  std::vector<double> sums(dirs.size(), 0.0);
  const Box box = Box::unit(spec.chart_dim());
  // One pass over quadrature nodes, all sample vectors per node.
  auto accumulate = [&](const std::vector<double>& w, double weight) {
    const Mat Uw = rep.act(spec.u(w));
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const double nrm = (At * (Uw * dirs[j])).norm();
      sums[j] += weight * std::pow(nrm, -theta);
    }
  };
  if (box.dim() <= quad.midpoint_max_dim) {
    const int npa = quad.points_per_axis;
    double cell = 1.0;
    for (int i = 0; i < box.dim(); ++i) cell *= 2.0 / npa;
    std::vector<int> idx(box.dim(), 0);
    std::vector<double> w(box.dim(), 0.0);
    for (;;) {
      for (int i = 0; i < box.dim(); ++i) w[i] = -1.0 + (idx[i] + 0.5) * 2.0 / npa;
      accumulate(w, cell);
      int pos = box.dim() - 1;
      while (pos >= 0 && ++idx[pos] == npa) idx[pos--] = 0;
      if (pos < 0) break;
    }
  } else {
    Rng mc(quad.seed);
    std::vector<double> w(box.dim(), 0.0);
    const double weight = box.volume() / quad.mc_samples;
    for (int s = 0; s < quad.mc_samples; ++s) {
      for (int i = 0; i < box.dim(); ++i) w[i] = mc.uniform(-1.0, 1.0);
      accumulate(w, weight);
    }
  }
  double best = 0.0;
  for (double v : sums) best = std::max(best, v);
  return best;
}

// Monte-Carlo measure of D^+(v, r) = { w : ||pi_+(u(w)v)|| <= r }, normalized
// to [0, 1] by the volume 2^m.
inline double good_sublevel_measure(const FlowSpec& spec, const Representation& rep,
                                    const Vec& v, double r, int samples,
                                    std::uint64_t seed = 11) {
  if (!(r >= 0)) throw usage_error("good_sublevel_measure: negative radius");
  Rng rng(seed);
  std::vector<double> w(spec.chart_dim(), 0.0);
  int hits = 0;
  for (int s = 0; s < samples; ++s) {
    for (auto& wi : w) wi = rng.uniform(-1.0, 1.0);
    const Vec img = rep.act(spec.u(w)) * v;
    if (rep.project_plus(img).norm() <= r) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

struct DriftResult {
  double lhs = 0.0;     // average of alpha(g_t u(w) x) over I^m
  double alpha_x = 0.0; // alpha(x)
};

inline DriftResult drift_check(const FlowSpec& spec, const HeightParams& params,
                               const LatticePoint& x, double t,
                               const QuadratureSpec& quad) {
  DriftResult res;
  res.alpha_x = alpha(params, x);
  res.lhs = box_average(spec.chart_dim(), quad, [&](const std::vector<double>& w) {
    return alpha(params, apply_flow(spec, x, t, w));
  });
  return res;
}

// Empirical Lipschitz slack of alpha under translations u([-2,2]^m): the
// factor used to relax sublevel thresholds when testing box representatives.
inline double measure_alpha_slack(const FlowSpec& spec, const HeightParams& params,
                                  int lattice_samples = 16, int grid_per_axis = 5,
                                  std::uint64_t seed = 23) {
  Rng rng(seed);
  const int d = spec.d;
  double worst = 1.0;
  for (int s = 0; s < lattice_samples; ++s) {
    Mat B(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) B(r, c) = rng.normal();
    LatticePoint y(B);
    if (std::abs(y.det()) < 1e-3) continue;
    y.renormalize();
    const double ay = alpha(params, y);
    std::vector<int> idx(spec.chart_dim(), 0);
    std::vector<double> xi(spec.chart_dim(), 0.0);
    for (;;) {
      for (int i = 0; i < spec.chart_dim(); ++i)
        xi[i] = -2.0 + 4.0 * idx[i] / (grid_per_axis - 1);
      LatticePoint ty(spec.u(xi) * y.basis);
      worst = std::max(worst, alpha(params, ty) / ay);
      int pos = spec.chart_dim() - 1;
      while (pos >= 0 && ++idx[pos] == grid_per_axis) idx[pos--] = 0;
      if (pos < 0) break;
    }
  }
  return worst;
}

}  // namespace latlab
