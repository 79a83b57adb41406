#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "latlab/rootsystem.hpp"

namespace latlab {

struct DominatedDecomposition {
  RVec alpha;
  std::vector<RVec> betas;
  std::vector<Rational> coeffs;
  std::string branch;
};

struct VerifyResult {
  bool pass = true;
  std::vector<std::string> reasons;

  void fail(const std::string& why) {
    pass = false;
    reasons.push_back(why);
  }
};

// Pure checker for the decomposition invariants: betas are positive roots
// forming a basis, alpha = sum c_i beta_i exactly, c_i >= 0, and
// beta_i + beta_j is never a root (i = j included: 2 beta not a root).
inline VerifyResult verify_decomposition(const RootSystem& sys,
                                         const DominatedDecomposition& dec) {
  VerifyResult res;
  const int n = sys.rank;
  if (static_cast<int>(dec.betas.size()) != n) {
    res.fail("expected " + std::to_string(n) + " betas");
    return res;
  }
  if (dec.betas.size() != dec.coeffs.size()) {
    res.fail("betas and coeffs disagree in length");
    return res;
  }
  std::set<std::string> positive_keys;
  for (const auto& r : sys.positive) positive_keys.insert(RootSystem::key(r));
  for (const auto& beta : dec.betas)
    if (!positive_keys.count(RootSystem::key(beta)))
      res.fail("beta not a positive root: " + RootSystem::key(beta));
  for (const auto& c : dec.coeffs)
    if (c < Rational(0)) res.fail("negative coefficient " + c.str());
  // Reconstruction.
  RVec sum(sys.ambient, Rational(0));
  for (int i = 0; i < static_cast<int>(dec.betas.size()); ++i)
    sum = radd(sum, rscale(dec.coeffs[i], dec.betas[i]));
  if (!rzero(rsub(sum, dec.alpha))) res.fail("betas do not reconstruct alpha");
  // Pairwise sums (and doubles) must avoid the root system.
  for (std::size_t i = 0; i < dec.betas.size(); ++i)
    for (std::size_t j = i; j < dec.betas.size(); ++j)
      if (sys.is_root(radd(dec.betas[i], dec.betas[j])))
        res.fail("beta_" + std::to_string(i) + " + beta_" + std::to_string(j) +
                 " is a root");
  // Linear independence over Q by Gaussian elimination.
  {
    std::vector<RVec> rows = dec.betas;
    int rank_count = 0;
    for (int col = 0; col < sys.ambient && rank_count < static_cast<int>(rows.size());
         ++col) {
      int pivot = -1;
      for (int r = rank_count; r < static_cast<int>(rows.size()); ++r)
        if (!rows[r][col].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      std::swap(rows[rank_count], rows[pivot]);
      for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        if (r == rank_count || rows[r][col].is_zero()) continue;
        const Rational f = rows[r][col] / rows[rank_count][col];
        for (int c2 = 0; c2 < sys.ambient; ++c2)
          rows[r][c2] -= f * rows[rank_count][c2];
      }
      ++rank_count;
    }
    if (rank_count < n) res.fail("betas are linearly dependent");
  }
  return res;
}

inline bool is_dominated(const RootSystem& sys, const RVec& alpha) {
  for (const auto& beta : sys.positive)
    if (rdot(alpha, beta) < Rational(0)) return false;
  return true;
}

// alpha from nonnegative fundamental-weight coordinates (always dominated).
inline RVec alpha_from_fundamental(const RootSystem& sys,
                                   const std::vector<Rational>& f) {
  if (static_cast<int>(f.size()) != sys.rank)
    throw usage_error("fundamental coordinates must match the rank");
  const auto inv = inverse_cartan(sys);
  RVec alpha(sys.ambient, Rational(0));
  for (int j = 0; j < sys.rank; ++j)
    for (int k = 0; k < sys.rank; ++k)
      alpha = radd(alpha, rscale(f[j] * inv[j][k], sys.simple[k]));
  return alpha;
}

namespace detail {

// Simple-basis coefficients of alpha, solved exactly; empty when alpha is
// outside span(Phi).
inline std::optional<RVec> simple_coefficients(const RootSystem& sys,
                                               const RVec& alpha) {
  const int n = sys.rank, amb = sys.ambient;
  // Augmented [S | alpha] with S columns = simple roots.
  std::vector<RVec> aug(amb, RVec(n + 1, Rational(0)));
  for (int r = 0; r < amb; ++r) {
    for (int c = 0; c < n; ++c) aug[r][c] = sys.simple[c][r];
    aug[r][n] = alpha[r];
  }
  int row = 0;
  std::vector<int> pivot_col(n, -1);
  for (int col = 0; col < n && row < amb; ++col) {
    int pivot = -1;
    for (int r = row; r < amb; ++r)
      if (!aug[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(aug[row], aug[pivot]);
    const Rational p = aug[row][col];
    for (auto& v : aug[row]) v /= p;
    for (int r = 0; r < amb; ++r) {
      if (r == row || aug[r][col].is_zero()) continue;
      const Rational f = aug[r][col];
      for (int c2 = 0; c2 <= n; ++c2) aug[r][c2] -= f * aug[row][c2];
    }
    pivot_col[col] = row;
    ++row;
  }
  // Consistency: rows after the pivots must be zero.
  for (int r = row; r < amb; ++r)
    if (!aug[r][n].is_zero()) return std::nullopt;
  RVec coeffs(n, Rational(0));
  for (int col = 0; col < n; ++col) {
    if (pivot_col[col] < 0) return std::nullopt; // simple roots dependent: impossible
    coeffs[col] = aug[pivot_col[col]][n];
  }
  return coeffs;
}

// Connected-prefix rearrangement for a path diagram: start at the largest
// value and repeatedly extend the interval by the larger neighbour. For a
// dominated vector the values are concave along the path, so the pick order
// is nonincreasing.
template <class K>
std::vector<int> path_merge_order(const std::vector<K>& a) {
  const int n = static_cast<int>(a.size());
  int start = 0;
  for (int i = 1; i < n; ++i)
    if (a[i] > a[start]) start = i;
  std::vector<int> order{start};
  int lo = start, hi = start;
  while (static_cast<int>(order.size()) < n) {
    const bool left_ok = lo > 0, right_ok = hi + 1 < n;
    bool take_left;
    if (left_ok && right_ok)
      take_left = !(a[hi + 1] > a[lo - 1]); // tie prefers the lower index
    else
      take_left = left_ok;
    order.push_back(take_left ? --lo : ++hi);
  }
  return order;
}

inline DominatedDecomposition decompose_chain(const RootSystem& sys,
                                              const RVec& alpha,
                                              const RVec& simple_coeffs) {
  DominatedDecomposition dec;
  dec.alpha = alpha;
  dec.branch = "A-chain";
  const int n = sys.rank;
  std::vector<Rational> a(simple_coeffs.begin(), simple_coeffs.end());
  const auto order = path_merge_order(a);
  // beta_i = sum of the first i+1 picked simple roots (an interval), with
  // coefficient a[order_i] - a[order_{i+1}].
  RVec acc(sys.ambient, Rational(0));
  for (int i = 0; i < n; ++i) {
    acc = radd(acc, sys.simple[order[i]]);
    dec.betas.push_back(acc);
    const Rational next = (i + 1 < n) ? a[order[i + 1]] : Rational(0);
    dec.coeffs.push_back(a[order[i]] - next);
  }
  return dec;
}

inline DominatedDecomposition decompose_orthogonal(const RootSystem& sys,
                                                   const RVec& alpha,
                                                   const std::vector<RVec>& system) {
  DominatedDecomposition dec;
  dec.alpha = alpha;
  dec.branch = "strongly-orthogonal";
  for (const auto& beta : system) {
    dec.betas.push_back(beta);
    dec.coeffs.push_back(rdot(alpha, beta) / rdot(beta, beta));
  }
  return dec;
}

// Type D with odd rank: the explicit list built from e-coordinates, with the
// fork swap e_n -> -e_n when needed and two sub-cases ordered by the tail
// remainders.
inline DominatedDecomposition decompose_d_odd(const RootSystem& sys, RVec alpha) {
  DominatedDecomposition dec;
  dec.branch = "D-odd";
  const int n = sys.rank;
  const bool flip = alpha[n - 1] > Rational(0);
  if (flip) alpha[n - 1] = -alpha[n - 1];
  const RVec t = alpha;

  auto e_plus = [&](int i, int j) { // e_i + e_j
    RVec v(sys.ambient, Rational(0));
    v[i] = Rational(1);
    v[j] = Rational(1);
    return v;
  };
  auto e_minus = [&](int i, int j) { // e_i - e_j
    RVec v(sys.ambient, Rational(0));
    v[i] = Rational(1);
    v[j] = Rational(-1);
    return v;
  };

  const Rational half(1, 2);
  for (int i = 0; 2 * (i + 1) <= n - 3; ++i) {
    const int p = 2 * i; // e_{2i-1}, e_{2i} in 1-based become p, p+1
    dec.betas.push_back(e_minus(p, p + 1));
    dec.coeffs.push_back((t[p] - t[p + 1]) * half);
    dec.betas.push_back(e_plus(p, p + 1));
    dec.coeffs.push_back((t[p] + t[p + 1]) * half);
  }
  const Rational b1 = t[n - 3];
  const Rational b2 = (t[n - 2] + t[n - 3] - t[n - 1]) * half;
  const Rational b3 = (t[n - 2] + t[n - 3] + t[n - 1]) * half;
  if (b1 >= b2) {
    dec.betas.push_back(e_plus(n - 3, n - 2));
    dec.coeffs.push_back(b3);
    dec.betas.push_back(e_minus(n - 3, n - 1));
    dec.coeffs.push_back(b2 - b3);
    dec.betas.push_back(e_minus(n - 3, n - 2));
    dec.coeffs.push_back(b1 - b2);
  } else {
    dec.betas.push_back(e_plus(n - 3, n - 2));
    dec.coeffs.push_back(b3);
    dec.betas.push_back(e_minus(n - 3, n - 1));
    dec.coeffs.push_back(b1 - b3);
    dec.betas.push_back(e_minus(n - 2, n - 1));
    dec.coeffs.push_back(b2 - b1);
  }
  if (flip) {
    alpha[n - 1] = -alpha[n - 1];
    for (auto& beta : dec.betas) beta[n - 1] = -beta[n - 1];
  }
  dec.alpha = alpha;
  return dec;
}

// Type E6: peel the highest root, then the chain 1-3-4-5-6, then one root per
// connected component of the remaining support; every pick subtracts the
// largest feasible coefficient and cuts at the lowest zeroed node, so the
// result is always a basis.
inline DominatedDecomposition decompose_e6(const RootSystem& sys, const RVec& alpha,
                                           const RVec& simple_coeffs) {
  DominatedDecomposition dec;
  dec.alpha = alpha;
  dec.branch = "E6-greedy";
  // Bourbaki indexing: chain nodes alpha_1, alpha_3, alpha_4, alpha_5,
  // alpha_6 (0-based 0,2,3,4,5) and the branch node alpha_2 (0-based 1).
  const std::vector<int> chain{0, 2, 3, 4, 5};
  const std::vector<Rational> theta_coeffs{Rational(1), Rational(2), Rational(2),
                                           Rational(3), Rational(2), Rational(1)};
  RVec theta(sys.ambient, Rational(0));
  for (int i = 0; i < 6; ++i)
    theta = radd(theta, rscale(theta_coeffs[i], sys.simple[i]));

  std::vector<Rational> rem(simple_coeffs.begin(), simple_coeffs.end());
  const Rational c1 = rem[1] / Rational(2);
  for (int i = 0; i < 6; ++i) rem[i] -= c1 * theta_coeffs[i];
  if (!rem[1].is_zero())
    throw numeric_error("E6 branch: branch-node coefficient did not cancel");
  dec.betas.push_back(theta);
  dec.coeffs.push_back(c1);

  auto process = [&](auto&& self, int lo, int hi) -> void {
    if (lo > hi) return;
    RVec beta(sys.ambient, Rational(0));
    Rational c = rem[chain[lo]];
    for (int p = lo; p <= hi; ++p) {
      beta = radd(beta, sys.simple[chain[p]]);
      c = std::min(c, rem[chain[p]]);
    }
    for (int p = lo; p <= hi; ++p) rem[chain[p]] -= c;
    dec.betas.push_back(beta);
    dec.coeffs.push_back(c);
    int cut = -1;
    for (int p = lo; p <= hi; ++p)
      if (rem[chain[p]].is_zero()) {
        cut = p;
        break;
      }
    self(self, lo, cut - 1);
    self(self, cut + 1, hi);
  };
  process(process, 0, 4);
  for (int i = 0; i < 6; ++i)
    if (!rem[i].is_zero())
      throw numeric_error("E6 branch: remainder did not vanish");
  return dec;
}

}  // namespace detail

// Decomposition of a dominated vector into positive roots with nonnegative
// coefficients and pairwise sums outside the root system, following the
// per-type constructions. Deterministic for a fixed system.
inline DominatedDecomposition decompose_dominated(const RootSystem& sys,
                                                  const RVec& alpha) {
  if (static_cast<int>(alpha.size()) != sys.ambient)
    throw usage_error("decompose_dominated: alpha has wrong dimension");
  if (!is_dominated(sys, alpha))
    throw usage_error("decompose_dominated: alpha is not dominated");
  const auto coeffs_opt = detail::simple_coefficients(sys, alpha);
  if (!coeffs_opt)
    throw usage_error("decompose_dominated: alpha is outside span(Phi)");
  const RVec& simple_coeffs = *coeffs_opt;

  DominatedDecomposition dec;
  switch (sys.family) {
    case Family::A:
      dec = detail::decompose_chain(sys, alpha, simple_coeffs);
      break;
    case Family::B:
    case Family::C:
    case Family::F:
    case Family::G: {
      std::set<std::string> membership;
      for (const auto& r : sys.roots) membership.insert(RootSystem::key(r));
      std::vector<RVec> system;
      if (!detail::find_strongly_orthogonal(sys.positive, membership, sys.rank, system))
        throw numeric_error("decompose_dominated: strongly-orthogonal search failed");
      dec = detail::decompose_orthogonal(sys, alpha, system);
      break;
    }
    case Family::D: {
      if (sys.rank % 2 == 0) {
        std::set<std::string> membership;
        for (const auto& r : sys.roots) membership.insert(RootSystem::key(r));
        std::vector<RVec> system;
        if (!detail::find_strongly_orthogonal(sys.positive, membership, sys.rank, system))
          throw numeric_error("decompose_dominated: strongly-orthogonal search failed");
        dec = detail::decompose_orthogonal(sys, alpha, system);
      } else {
        dec = detail::decompose_d_odd(sys, alpha);
      }
      break;
    }
    case Family::E: {
      if (sys.rank == 6) {
        dec = detail::decompose_e6(sys, alpha, simple_coeffs);
      } else {
        std::set<std::string> membership;
        for (const auto& r : sys.roots) membership.insert(RootSystem::key(r));
        std::vector<RVec> system;
        if (!detail::find_strongly_orthogonal(sys.positive, membership, sys.rank, system))
          throw numeric_error("decompose_dominated: strongly-orthogonal search failed");
        dec = detail::decompose_orthogonal(sys, alpha, system);
      }
      break;
    }
    case Family::BC: {
      // Pass to the reduced subsystem of roots whose double is not a root.
      std::vector<RVec> sub_positive;
      std::set<std::string> sub_membership;
      for (const auto& r : sys.roots)
        if (!sys.is_root(rscale(Rational(2), r)))
          sub_membership.insert(RootSystem::key(r));
      for (const auto& r : sys.positive)
        if (!sys.is_root(rscale(Rational(2), r))) sub_positive.push_back(r);
      std::vector<RVec> system;
      if (!detail::find_strongly_orthogonal(sub_positive, sub_membership, sys.rank,
                                            system))
        throw numeric_error("decompose_dominated: BC subsystem search failed");
      dec = detail::decompose_orthogonal(sys, alpha, system);
      dec.branch = "BC-reduction";
      break;
    }
  }
  dec.alpha = alpha;
  const VerifyResult check = verify_decomposition(sys, dec);
  if (!check.pass) {
    std::string why = "decompose_dominated: branch " + dec.branch + " failed:";
    for (const auto& r : check.reasons) why += " " + r + ";";
    throw numeric_error(why);
  }
  return dec;
}

}  // namespace latlab
