#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "latlab/flow.hpp"

namespace latlab {

// Lagrange-Gauss reduction of a 2D basis (columns). Terminates with
// ||b1|| <= ||b2|| and |<b1,b2>| <= ||b1||^2 / 2.
inline void lagrange_gauss(Mat& B) {
  Eigen::Vector2d b1 = B.col(0), b2 = B.col(1);
  if (b1.squaredNorm() > b2.squaredNorm()) std::swap(b1, b2);
  for (int guard = 0; guard < 64; ++guard) {
    const double mu = std::round(b2.dot(b1) / b1.squaredNorm());
    b2 -= mu * b1;
    if (b2.squaredNorm() >= b1.squaredNorm()) break;
    std::swap(b1, b2);
  }
  B.col(0) = b1;
  B.col(1) = b2;
}

// Textbook LLL on columns, delta = 0.99. Double precision is plenty for the
// d <= 5 bases this project sees.
inline void lll_reduce(Mat& B, double delta = 0.99) {
  const int d = static_cast<int>(B.cols());
  if (d == 2) {
    lagrange_gauss(B);
    return;
  }
  auto gram_schmidt = [&](Mat& Bstar, Mat& mu) {
    Bstar = B.cast<double>();
    mu = Mat::Identity(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < i; ++j) {
        const double m = B.col(i).dot(Bstar.col(j)) / Bstar.col(j).squaredNorm();
        mu(i, j) = m;
        Bstar.col(i) -= m * Bstar.col(j);
      }
    }
  };
  Mat Bstar, mu;
  gram_schmidt(Bstar, mu);
  int k = 1;
  int guard = 0;
  while (k < d) {
    if (++guard > 100000) throw numeric_error("lll_reduce: no convergence");
    for (int j = k - 1; j >= 0; --j) {
      const double m = std::round(mu(k, j));
      if (m != 0.0) {
        B.col(k) -= m * B.col(j);
        gram_schmidt(Bstar, mu);
      }
    }
    if (Bstar.col(k).squaredNorm() >=
        (delta - mu(k, k - 1) * mu(k, k - 1)) * Bstar.col(k - 1).squaredNorm()) {
      ++k;
    } else {
      B.col(k).swap(B.col(k - 1));
      gram_schmidt(Bstar, mu);
      k = std::max(k - 1, 1);
    }
  }
}

struct ShortVector {
  std::vector<std::int64_t> coeffs; // w.r.t. the basis handed to enumerate
  Vec point;
  double norm = 0.0;
};

// Fincke-Pohst enumeration of all nonzero lattice vectors with norm <= radius,
// one representative per +- pair (highest-index nonzero coefficient positive).
inline std::vector<ShortVector> enumerate_short(const Mat& B, double radius,
                                                std::int64_t budget = 2'000'000) {
  const int d = static_cast<int>(B.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
  Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k)
    if (R(k, k) < 0) R.row(k) *= -1.0;
  for (int k = 0; k < d; ++k)
    if (!(R(k, k) > 0)) throw numeric_error("enumerate_short: singular basis");

  const double bound2 = radius * radius * (1.0 + 1e-9);
  std::vector<ShortVector> found;
  std::vector<std::int64_t> c(d, 0);
  std::vector<double> partial(d + 1, 0.0); // sum of squared terms above level k
  std::int64_t nodes = 0;

  // DFS over coefficient levels d-1 .. 0.
  auto rec = [&](auto&& self, int k, bool higher_all_zero) -> void {
    if (++nodes > budget) throw numeric_error("enumeration budget exceeded");
    if (k < 0) {
      if (higher_all_zero) return; // zero vector
      ShortVector sv;
      sv.coeffs = c;
      sv.point = Vec::Zero(d);
      for (int j = 0; j < d; ++j)
        sv.point += static_cast<double>(c[j]) * B.col(j);
      sv.norm = sv.point.norm();
      if (sv.norm <= radius * (1.0 + 1e-12)) found.push_back(sv);
      return;
    }
    double shift = 0.0;
    for (int j = k + 1; j < d; ++j) shift += R(k, j) * static_cast<double>(c[j]);
    const double room = bound2 - partial[k + 1];
    if (room < 0) return;
    const double half = std::sqrt(room);
    double lo = (-half - shift) / R(k, k);
    double hi = (half - shift) / R(k, k);
    std::int64_t clo = static_cast<std::int64_t>(std::ceil(lo - 1e-12));
    std::int64_t chi = static_cast<std::int64_t>(std::floor(hi + 1e-12));
    if (higher_all_zero) clo = std::max<std::int64_t>(clo, 0);
    for (std::int64_t v = clo; v <= chi; ++v) {
      c[k] = v;
      const double term = R(k, k) * static_cast<double>(v) + shift;
      partial[k] = partial[k + 1] + term * term;
      if (partial[k] <= bound2) self(self, k - 1, higher_all_zero && v == 0);
    }
    c[k] = 0;
  };
  rec(rec, d - 1, true);
  return found;
}

inline double shortest_vector_norm(Mat B, std::int64_t budget = 2'000'000) {
  lll_reduce(B);
  double best = B.col(0).norm();
  for (int j = 1; j < B.cols(); ++j) best = std::min(best, B.col(j).norm());
  const auto vecs = enumerate_short(B, best, budget);
  for (const auto& v : vecs) best = std::min(best, v.norm);
  return best;
}

namespace detail {

inline double gamma_power(int i) {
  // Hermite constants gamma_i^{i/2} for i <= 4 (exact values).
  switch (i) {
    case 1: return 1.0;
    case 2: return std::sqrt(4.0 / 3.0);
    case 3: return std::sqrt(2.0);
    case 4: return 2.0;
    default: return std::pow(2.0, 0.5 * i); // safe overestimate
  }
}

// Covolume of the tuple; 0 for (numerically) dependent tuples, judged
// relative to the product of the side lengths.
inline double subset_covolume(const std::vector<const Vec*>& vs) {
  const int k = static_cast<int>(vs.size());
  Eigen::MatrixXd G(k, k);
  double side2 = 1.0;
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) G(a, b) = vs[a]->dot(*vs[b]);
    side2 *= G(a, a);
  }
  const double det = G.determinant();
  return det > 1e-12 * side2 ? std::sqrt(det) : 0.0;
}

}  // namespace detail

// Minimal covolume of a rank-i sublattice: min ||v_1 ^ ... ^ v_i|| over
// linearly independent lattice vectors. Reduction first, then exhaustive
// enumeration inside a radius that provably contains a minimizing basis
// (successive-minima bound on the optimal sublattice).
inline double minima(const LatticePoint& x, int i,
                     std::int64_t budget = 4'000'000) {
  const int d = x.dim();
  if (d > 5) throw usage_error("minima: only d <= 5 supported");
  if (i <= 0 || i >= d) throw usage_error("minima: degree out of range");
  if (i == 1) return shortest_vector_norm(x.basis, budget);
  const double absdet = std::abs(x.basis.determinant());
  if (i == d - 1) {
    // Hodge duality: rank-(d-1) covolumes are |det| times dual vector norms.
    Mat dual = x.basis.inverse().transpose();
    return absdet * shortest_vector_norm(dual, budget);
  }

  Mat B = x.basis;
  lll_reduce(B);
  const double lambda1 = shortest_vector_norm(B, budget);

  // Initial upper bound from reduced-basis subsets.
  double best = std::numeric_limits<double>::infinity();
  const auto subs = lex_subsets(d, i);
  for (const auto& s : subs) {
    std::vector<Vec> cols;
    std::vector<const Vec*> ptrs;
    cols.reserve(i);
    for (int idx : s) cols.push_back(B.col(idx));
    for (const auto& cvec : cols) ptrs.push_back(&cvec);
    const double vol = detail::subset_covolume(ptrs);
    if (vol > 0) best = std::min(best, vol);
  }

  const double radius =
      detail::gamma_power(i) * best / std::pow(lambda1, i - 1) * (1.0 + 1e-9);
  auto vecs = enumerate_short(B, radius, budget);
  std::sort(vecs.begin(), vecs.end(),
            [](const ShortVector& a, const ShortVector& b) { return a.norm < b.norm; });
  const std::size_t nv = vecs.size();
  if (nv >= 2000) throw numeric_error("enumeration budget exceeded");

  std::vector<const Vec*> chosen;
  std::int64_t combos = 0;
  auto dfs = [&](auto&& self, std::size_t start) -> void {
    if (static_cast<int>(chosen.size()) == i) {
      const double vol = detail::subset_covolume(chosen);
      if (vol > 0.0 && vol < best) best = vol;
      return;
    }
    for (std::size_t j = start; j < nv; ++j) {
      if (++combos > budget) throw numeric_error("enumeration budget exceeded");
      chosen.push_back(&vecs[j].point);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return best;
}

// Number of primitive nonzero lattice vectors with euclidean norm <= r
// (both signs counted).
inline std::int64_t siegel_count(const LatticePoint& x, double r,
                                 std::int64_t budget = 8'000'000) {
  if (!(r > 0)) throw usage_error("siegel_count: radius must be positive");
  Mat B = x.basis;
  lll_reduce(B);
  const auto vecs = enumerate_short(B, r, budget);
  std::int64_t count = 0;
  for (const auto& v : vecs) {
    std::int64_t g = 0;
    for (std::int64_t cv : v.coeffs) g = std::gcd(g, std::abs(cv));
    if (g == 1) count += 2; // v and -v
  }
  return count;
}

}  // namespace latlab
