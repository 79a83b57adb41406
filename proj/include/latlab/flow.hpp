#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "latlab/exterior.hpp"

namespace latlab {

// One-parameter diagonal flow on SL_d together with the unipotent chart
// through the upper-right m x n block. Chart axis k = (i, j) carries the
// conjugation weight a_i + b_j: g_t u(e_k) g_{-t} = u(exp(t w_k) e_k).
struct FlowSpec {
  int d = 0;
  int m = 0;             // expanding block
  int n = 0;             // contracting block
  std::vector<double> a; // length m, positive
  std::vector<double> b; // length n, positive
  std::vector<double> exponents; // (a_1..a_m, -b_1..-b_n)
  std::vector<double> weights;   // length m*n, row-major over (i, j)

  int chart_dim() const { return m * n; }

  Mat g(double t) const {
    Mat out = Mat::Zero(d, d);
    for (int k = 0; k < d; ++k) out(k, k) = std::exp(exponents[k] * t);
    return out;
  }

  // u(xi) for a chart point xi in R^{mn} (row-major matrix entries).
  Mat u(const std::vector<double>& xi) const {
    Mat out = Mat::Identity(d, d);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) out(i, m + j) = xi[i * n + j];
    return out;
  }

  double max_exponent() const {
    double mx = 0.0;
    for (double e : exponents) mx = std::max(mx, std::abs(e));
    return mx;
  }
};

inline FlowSpec make_flow(std::vector<double> a, std::vector<double> b) {
  FlowSpec spec;
  spec.m = static_cast<int>(a.size());
  spec.n = static_cast<int>(b.size());
  spec.d = spec.m + spec.n;
  if (spec.m == 0 || spec.n == 0) throw usage_error("make_flow: empty block");
  for (double v : a)
    if (!(v > 0)) throw usage_error("make_flow: nonpositive entry in a");
  for (double v : b)
    if (!(v > 0)) throw usage_error("make_flow: nonpositive entry in b");
  const double sa = std::accumulate(a.begin(), a.end(), 0.0);
  const double sb = std::accumulate(b.begin(), b.end(), 0.0);
  if (std::abs(sa - sb) > 1e-12)
    throw usage_error("make_flow: sum(a) != sum(b), flow not in SL_d");
  spec.a = std::move(a);
  spec.b = std::move(b);
  spec.exponents.resize(spec.d);
  for (int i = 0; i < spec.m; ++i) spec.exponents[i] = spec.a[i];
  for (int j = 0; j < spec.n; ++j) spec.exponents[spec.m + j] = -spec.b[j];
  spec.weights.resize(spec.m * spec.n);
  for (int i = 0; i < spec.m; ++i)
    for (int j = 0; j < spec.n; ++j)
      spec.weights[i * spec.n + j] = spec.a[i] + spec.b[j];
  return spec;
}

// A unimodular lattice g Z^d given by its basis matrix (columns generate).
struct LatticePoint {
  Mat basis;

  explicit LatticePoint(Mat B) : basis(std::move(B)) {}

  static LatticePoint standard(int d) { return LatticePoint(Mat::Identity(d, d)); }

  int dim() const { return static_cast<int>(basis.rows()); }

  double det() const { return basis.determinant(); }

  void renormalize() {
    const double dv = det();
    if (!(std::abs(dv) > 0)) throw numeric_error("degenerate lattice basis");
    if (dv < 0) basis.col(0) *= -1.0; // same lattice, positive orientation
    basis /= std::pow(std::abs(dv), 1.0 / dim());
  }
};

inline LatticePoint apply_flow(const FlowSpec& spec, const LatticePoint& x,
                               double t, const std::vector<double>& w,
                               bool renormalize = true) {
  if (static_cast<int>(w.size()) != spec.chart_dim())
    throw usage_error("apply_flow: chart point has wrong dimension");
  if (std::abs(t) * spec.max_exponent() > 500.0)
    throw numeric_error("apply_flow: time step would overflow double range");
  LatticePoint y(spec.g(t) * spec.u(w) * x.basis);
  if (renormalize) y.renormalize();
  return y;
}

}  // namespace latlab
