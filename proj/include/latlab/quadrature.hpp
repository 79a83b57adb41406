#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "latlab/rng.hpp"

namespace latlab {

// Integration over boxes in the chart R^m. Midpoint tensor rule for low m,
// Monte Carlo above (integrands are piecewise-smooth in w).
struct QuadratureSpec {
  int points_per_axis = 64;
  int mc_samples = 10000;
  std::uint64_t seed = 1;
  int midpoint_max_dim = 2;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box unit(int m) {
    Box b;
    b.lo.assign(m, -1.0);
    b.hi.assign(m, 1.0);
    return b;
  }

  int dim() const { return static_cast<int>(lo.size()); }

  double volume() const {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) v *= hi[i] - lo[i];
    return v;
  }
};

template <class F>
double box_integral_midpoint(const Box& box, int points_per_axis, F&& f) {
  const int m = box.dim();
  std::vector<int> idx(m, 0);
  std::vector<double> w(m, 0.0);
  double cell = 1.0;
  for (int i = 0; i < m; ++i) cell *= (box.hi[i] - box.lo[i]) / points_per_axis;
  double total = 0.0;
  for (;;) {
    for (int i = 0; i < m; ++i) {
      const double h = (box.hi[i] - box.lo[i]) / points_per_axis;
      w[i] = box.lo[i] + (idx[i] + 0.5) * h;
    }
    total += f(w);
    int pos = m - 1;
    while (pos >= 0 && ++idx[pos] == points_per_axis) idx[pos--] = 0;
    if (pos < 0) break;
  }
  return total * cell;
}

template <class F>
double box_integral_mc(const Box& box, int samples, std::uint64_t seed, F&& f) {
  const int m = box.dim();
  Rng rng(seed);
  std::vector<double> w(m, 0.0);
  double total = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < m; ++i) w[i] = rng.uniform(box.lo[i], box.hi[i]);
    total += f(w);
  }
  return total / samples * box.volume();
}

template <class F>
double box_integral(const Box& box, const QuadratureSpec& q, F&& f) {
  if (box.dim() <= q.midpoint_max_dim)
    return box_integral_midpoint(box, q.points_per_axis, f);
  return box_integral_mc(box, q.mc_samples, q.seed, f);
}

// Average over I^m (integral divided by 2^m).
template <class F>
double box_average(int m, const QuadratureSpec& q, F&& f) {
  const Box box = Box::unit(m);
  return box_integral(box, q, f) / box.volume();
}

}  // namespace latlab
