#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "latlab/common.hpp"

namespace latlab {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// All i-element subsets of {0..d-1} in lexicographic order. Every module
// indexes wedge coordinates through this list, so the order is part of the
// file-format contract.
inline std::vector<std::vector<int>> lex_subsets(int d, int i) {
  std::vector<std::vector<int>> out;
  if (i < 0 || i > d) return out;
  std::vector<int> cur(i);
  for (int j = 0; j < i; ++j) cur[j] = j;
  for (;;) {
    out.push_back(cur);
    int pos = i - 1;
    while (pos >= 0 && cur[pos] == d - i + pos) --pos;
    if (pos < 0) break;
    ++cur[pos];
    for (int j = pos + 1; j < i; ++j) cur[j] = cur[j - 1] + 1;
  }
  if (i == 0) {
    out.clear();
    out.push_back({});
  }
  return out;
}

// Element of wedge^i R^d, coordinates indexed by lex_subsets(d, i).
struct MultiVector {
  int d = 0;
  int degree = 0;
  Vec coords;

  MultiVector() = default;
  MultiVector(int dim, int deg)
      : d(dim), degree(deg), coords(Vec::Zero(binomial(dim, deg))) {
    if (deg < 0 || deg > dim) throw usage_error("multivector degree out of range");
  }

  double norm() const { return coords.norm(); }
};

// Basis multivector e_{S} for an index subset S (0-based, strictly increasing).
inline MultiVector basis_multivector(int d, const std::vector<int>& subset) {
  MultiVector v(d, static_cast<int>(subset.size()));
  const auto subs = lex_subsets(d, v.degree);
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k] == subset) {
      v.coords[static_cast<Eigen::Index>(k)] = 1.0;
      return v;
    }
  }
  throw usage_error("invalid basis subset");
}

// Matrix of wedge^i M in the lexicographic wedge basis: column T holds the
// i x i minors det(M[S, T]).
inline Mat exterior_action(const Mat& M, int i) {
  const int d = static_cast<int>(M.rows());
  if (M.cols() != d) throw usage_error("exterior_action needs a square matrix");
  if (i < 0 || i > d) throw usage_error("exterior degree out of range");
  const auto subs = lex_subsets(d, i);
  const auto n = static_cast<Eigen::Index>(subs.size());
  Mat out(n, n);
  Eigen::MatrixXd minor(i, i);
  for (Eigen::Index col = 0; col < n; ++col) {
    for (Eigen::Index row = 0; row < n; ++row) {
      for (int r = 0; r < i; ++r)
        for (int c = 0; c < i; ++c) minor(r, c) = M(subs[row][r], subs[col][c]);
      out(row, col) = (i == 0) ? 1.0 : minor.determinant();
    }
  }
  return out;
}

inline MultiVector apply_exterior(const Mat& M, const MultiVector& v) {
  MultiVector out(v.d, v.degree);
  out.coords = exterior_action(M, v.degree) * v.coords;
  return out;
}

namespace detail {

// Sign of merging two disjoint increasing index sequences, i.e. the parity of
// the permutation sorting (s, t) into increasing order. Returns 0 on overlap.
inline int merge_sign(const std::vector<int>& s, const std::vector<int>& t,
                      std::vector<int>& merged) {
  merged.clear();
  merged.reserve(s.size() + t.size());
  int inversions = 0;
  std::size_t a = 0, b = 0;
  while (a < s.size() && b < t.size()) {
    if (s[a] == t[b]) return 0;
    if (s[a] < t[b]) {
      merged.push_back(s[a++]);
    } else {
      inversions += static_cast<int>(s.size() - a);
      merged.push_back(t[b++]);
    }
  }
  while (a < s.size()) merged.push_back(s[a++]);
  while (b < t.size()) merged.push_back(t[b++]);
  return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace detail

inline MultiVector wedge(const MultiVector& u, const MultiVector& v) {
  if (u.d != v.d) throw usage_error("wedge: dimension mismatch");
  if (u.degree + v.degree > u.d) throw usage_error("wedge: degree overflow");
  MultiVector out(u.d, u.degree + v.degree);
  const auto su = lex_subsets(u.d, u.degree);
  const auto sv = lex_subsets(v.d, v.degree);
  const auto sout = lex_subsets(u.d, out.degree);
  // Map from subset to output position.
  auto position = [&](const std::vector<int>& s) {
    for (std::size_t k = 0; k < sout.size(); ++k)
      if (sout[k] == s) return static_cast<Eigen::Index>(k);
    return static_cast<Eigen::Index>(-1);
  };
  std::vector<int> merged;
  for (std::size_t a = 0; a < su.size(); ++a) {
    const double ua = u.coords[static_cast<Eigen::Index>(a)];
    if (ua == 0.0) continue;
    for (std::size_t b = 0; b < sv.size(); ++b) {
      const double vb = v.coords[static_cast<Eigen::Index>(b)];
      if (vb == 0.0) continue;
      const int sgn = detail::merge_sign(su[a], sv[b], merged);
      if (sgn == 0) continue;
      out.coords[position(merged)] += sgn * ua * vb;
    }
  }
  return out;
}

}  // namespace latlab
