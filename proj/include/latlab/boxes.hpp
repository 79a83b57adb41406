#pragma once

#include <cmath>
#include <vector>

#include "latlab/flow.hpp"

namespace latlab {

// Level-n cell of the nested box partition of I^m. Level n subdivides each
// level-(n-1) cell from its lower corner into slices of length e^{-n t b_i};
// the last slice per axis absorbs the remainder (length < 2 e^{-n t b_i}).
// The per-axis index paths identify the cell: two points lie in the same
// level-n box iff all their per-axis indices agree.
struct BoxIndex {
  int level = 0;
  std::vector<std::vector<int>> path; // [axis][level-1]
  std::vector<double> lo;             // lower corner
  std::vector<double> len;            // side lengths

  bool operator==(const BoxIndex& other) const {
    return level == other.level && path == other.path;
  }

  bool contains(const std::vector<double>& w) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (w[i] < lo[i] || w[i] >= lo[i] + len[i]) return false;
    return true;
  }
};

inline BoxIndex box_of(const FlowSpec& spec, double t, int level,
                       const std::vector<double>& w) {
  const int m = spec.chart_dim();
  if (static_cast<int>(w.size()) != m)
    throw usage_error("box_of: point has wrong dimension");
  for (double wi : w)
    if (wi < -1.0 || wi > 1.0) throw usage_error("box_of: point outside I^m");
  if (level < 0) throw usage_error("box_of: negative level");
  BoxIndex box;
  box.level = level;
  box.path.resize(m);
  box.lo.assign(m, -1.0);
  box.len.assign(m, 2.0);
  for (int axis = 0; axis < m; ++axis) {
    double lo = -1.0, len = 2.0;
    for (int n = 1; n <= level; ++n) {
      const double side = std::exp(-n * t * spec.weights[axis]);
      const int cells = std::max(1, static_cast<int>(std::floor(len / side)));
      int j = static_cast<int>(std::floor((w[axis] - lo) / side));
      j = std::min(std::max(j, 0), cells - 1);
      const double newlo = lo + j * side;
      len = (j == cells - 1) ? (lo + len - newlo) : side;
      lo = newlo;
      box.path[axis].push_back(j);
    }
    box.lo[axis] = lo;
    box.len[axis] = len;
  }
  return box;
}

}  // namespace latlab
