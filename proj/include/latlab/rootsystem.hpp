#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "latlab/rational.hpp"

namespace latlab {

using RVec = std::vector<Rational>;

inline Rational rdot(const RVec& a, const RVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RVec radd(const RVec& a, const RVec& b) {
  RVec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

inline RVec rsub(const RVec& a, const RVec& b) {
  RVec out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

inline RVec rscale(const Rational& c, const RVec& a) {
  RVec out = a;
  for (auto& v : out) v *= c;
  return out;
}

inline RVec rneg(const RVec& a) { return rscale(Rational(-1), a); }

inline bool rzero(const RVec& a) {
  for (const auto& v : a)
    if (!v.is_zero()) return false;
  return true;
}

enum class Family { A, B, C, D, E, F, G, BC };

inline Family parse_family(const std::string& name) {
  if (name == "A" || name == "a") return Family::A;
  if (name == "B" || name == "b") return Family::B;
  if (name == "C" || name == "c") return Family::C;
  if (name == "D" || name == "d") return Family::D;
  if (name == "E" || name == "e") return Family::E;
  if (name == "F" || name == "f") return Family::F;
  if (name == "G" || name == "g") return Family::G;
  if (name == "BC" || name == "bc") return Family::BC;
  throw usage_error("unknown root-system family: " + name);
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::E: return "E";
    case Family::F: return "F";
    case Family::G: return "G";
    case Family::BC: return "BC";
  }
  return "?";
}

// Irreducible (possibly nonreduced) root system in orthonormal coordinates.
struct RootSystem {
  Family family = Family::A;
  int rank = 0;
  int ambient = 0;
  std::vector<RVec> simple;
  std::vector<RVec> roots;
  std::vector<RVec> positive;
  // Expansion of each positive root in the simple basis (same indexing).
  std::vector<RVec> positive_coeffs;
  std::vector<std::vector<Rational>> cartan;

  bool is_root(const RVec& v) const { return keys_.count(key(v)) > 0; }

  static std::string key(const RVec& v) {
    std::string s;
    for (const auto& r : v) {
      s += std::to_string(r.num);
      s += '/';
      s += std::to_string(r.den);
      s += ',';
    }
    return s;
  }

  void index_roots() {
    keys_.clear();
    for (const auto& r : roots) keys_.insert(key(r));
  }

 private:
  std::set<std::string> keys_;
};

namespace detail {

inline RVec unit_coord(int ambient, int i, std::int64_t c = 1) {
  RVec v(ambient, Rational(0));
  v[i] = Rational(c);
  return v;
}

inline std::vector<RVec> simple_roots_for(Family family, int rank, int& ambient) {
  std::vector<RVec> simple;
  auto e = [&](int i, std::int64_t c = 1) { return unit_coord(ambient, i, c); };
  switch (family) {
    case Family::A: {
      ambient = rank + 1;
      for (int i = 0; i < rank; ++i)
        simple.push_back(rsub(e(i), e(i + 1)));
      break;
    }
    case Family::B:
    case Family::BC: {
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) simple.push_back(rsub(e(i), e(i + 1)));
      simple.push_back(e(rank - 1));
      break;
    }
    case Family::C: {
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) simple.push_back(rsub(e(i), e(i + 1)));
      simple.push_back(e(rank - 1, 2));
      break;
    }
    case Family::D: {
      ambient = rank;
      for (int i = 0; i + 1 < rank; ++i) simple.push_back(rsub(e(i), e(i + 1)));
      simple.push_back(radd(e(rank - 2), e(rank - 1)));
      break;
    }
    case Family::G: {
      ambient = 3;
      simple.push_back(rsub(e(0), e(1)));
      RVec a2(ambient, Rational(0));
      a2[0] = Rational(-2);
      a2[1] = Rational(1);
      a2[2] = Rational(1);
      simple.push_back(a2);
      break;
    }
    case Family::F: {
      ambient = 4;
      simple.push_back(rsub(e(1), e(2)));
      simple.push_back(rsub(e(2), e(3)));
      simple.push_back(e(3));
      RVec a4(ambient, Rational(0));
      a4[0] = Rational(1, 2);
      a4[1] = Rational(-1, 2);
      a4[2] = Rational(-1, 2);
      a4[3] = Rational(-1, 2);
      simple.push_back(a4);
      break;
    }
    case Family::E: {
      ambient = 8;
      RVec a1(ambient, Rational(0));
      a1[0] = Rational(1, 2);
      a1[7] = Rational(1, 2);
      for (int i = 1; i <= 6; ++i) a1[i] = Rational(-1, 2);
      simple.push_back(a1);
      simple.push_back(radd(e(0), e(1)));
      for (int i = 0; i + 2 <= rank - 1; ++i)
        simple.push_back(rsub(e(i + 1), e(i)));
      break;
    }
  }
  return simple;
}

inline std::int64_t expected_count(Family family, int n) {
  switch (family) {
    case Family::A: return static_cast<std::int64_t>(n) * (n + 1);
    case Family::B:
    case Family::C: return 2LL * n * n;
    case Family::D: return 2LL * n * (n - 1);
    case Family::G: return 12;
    case Family::F: return 48;
    case Family::E: return n == 6 ? 72 : (n == 7 ? 126 : 240);
    case Family::BC: return 2LL * n * n + 2LL * n;
  }
  return 0;
}

}  // namespace detail

inline void validate_family_rank(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::B: ok = rank >= 2; break;
    case Family::C: ok = rank >= 2; break;
    case Family::D: ok = rank >= 3; break;
    case Family::E: ok = rank == 6 || rank == 7 || rank == 8; break;
    case Family::F: ok = rank == 4; break;
    case Family::G: ok = rank == 2; break;
    case Family::BC: ok = rank >= 1; break;
  }
  if (!ok || rank > 8)
    throw usage_error("inadmissible (family, rank): " + family_name(family) +
                      std::to_string(rank));
}

// Builds the full root list by closing the simple roots under simple
// reflections, tracking simple-basis coefficients along the way; the size is
// validated against the classification count.
inline RootSystem build_root_system(Family family, int rank) {
  validate_family_rank(family, rank);
  RootSystem sys;
  sys.family = family;
  sys.rank = rank;
  sys.simple = detail::simple_roots_for(family, rank, sys.ambient);

  // Worklist closure; each entry carries (root, simple-basis coefficients).
  std::map<std::string, RVec> seen; // key -> coeffs
  std::vector<std::pair<RVec, RVec>> work;
  for (int i = 0; i < rank; ++i) {
    RVec c(rank, Rational(0));
    c[i] = Rational(1);
    work.emplace_back(sys.simple[i], c);
    seen[RootSystem::key(sys.simple[i])] = c;
  }
  std::vector<Rational> simple_norm2(rank);
  for (int i = 0; i < rank; ++i)
    simple_norm2[i] = rdot(sys.simple[i], sys.simple[i]);
  while (!work.empty()) {
    auto [beta, coeffs] = work.back();
    work.pop_back();
    for (int i = 0; i < rank; ++i) {
      const Rational factor = Rational(2) * rdot(beta, sys.simple[i]) / simple_norm2[i];
      RVec refl = rsub(beta, rscale(factor, sys.simple[i]));
      RVec rc = coeffs;
      rc[i] -= factor;
      const std::string k = RootSystem::key(refl);
      if (!seen.count(k)) {
        seen[k] = rc;
        work.emplace_back(refl, rc);
      }
    }
  }
  // Nonreduced family: adjoin the doubled short roots by hand.
  if (family == Family::BC) {
    for (int i = 0; i < rank; ++i) {
      RVec dbl = detail::unit_coord(sys.ambient, i, 2);
      RVec c(rank, Rational(0));
      // 2 e_i = 2(alpha_i + ... + alpha_{n-1}) in the B_n simple basis.
      for (int j = i; j < rank; ++j) c[j] = Rational(2);
      for (const RVec* v : {&dbl}) {
        if (!seen.count(RootSystem::key(*v))) seen[RootSystem::key(*v)] = c;
      }
      RVec neg = rneg(dbl);
      RVec nc = rneg(c);
      if (!seen.count(RootSystem::key(neg))) seen[RootSystem::key(neg)] = nc;
    }
  }

  // Rebuild each root from its simple-basis coefficients; map order keeps the
  // listing reproducible.
  std::vector<std::pair<RVec, RVec>> all;
  for (const auto& entry : seen) {
    RVec root(sys.ambient, Rational(0));
    const RVec& coeffs = entry.second;
    for (int i = 0; i < rank; ++i)
      root = radd(root, rscale(coeffs[i], sys.simple[i]));
    all.emplace_back(root, coeffs);
  }
  if (static_cast<std::int64_t>(all.size()) != detail::expected_count(family, rank))
    throw numeric_error("root closure does not match the classification count for " +
                        family_name(family) + std::to_string(rank));
  for (const auto& [root, coeffs] : all) {
    sys.roots.push_back(root);
    bool pos = false;
    for (const auto& c : coeffs)
      if (!c.is_zero()) {
        pos = c > Rational(0);
        break;
      }
    if (pos) {
      sys.positive.push_back(root);
      sys.positive_coeffs.push_back(coeffs);
    }
  }
  sys.index_roots();

  sys.cartan.assign(rank, std::vector<Rational>(rank, Rational(0)));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      sys.cartan[i][j] =
          Rational(2) * rdot(sys.simple[i], sys.simple[j]) / simple_norm2[j];
  return sys;
}

// Exact inverse of the Cartan matrix; entries are checked strictly positive.
inline std::vector<std::vector<Rational>> inverse_cartan(const RootSystem& sys) {
  const int n = sys.rank;
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = sys.cartan[i][j];
    aug[i][n + i] = Rational(1);
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!aug[r][col].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw numeric_error("inverse_cartan: singular Cartan matrix");
    std::swap(aug[col], aug[pivot]);
    const Rational p = aug[col][col];
    for (int j = 0; j < 2 * n; ++j) aug[col][j] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || aug[r][col].is_zero()) continue;
      const Rational f = aug[r][col];
      for (int j = 0; j < 2 * n; ++j) aug[r][j] -= f * aug[col][j];
    }
  }
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      inv[i][j] = aug[i][n + j];
      if (!(inv[i][j] > Rational(0)))
        throw numeric_error("inverse_cartan: nonpositive entry");
    }
  return inv;
}

namespace detail {

// Backtracking search for `target` pairwise strongly orthogonal roots from
// `candidates` (sum and difference both outside `membership`).
inline bool find_strongly_orthogonal(const std::vector<RVec>& candidates,
                                     const std::set<std::string>& membership,
                                     int target, std::vector<RVec>& out,
                                     std::int64_t budget = 5'000'000) {
  std::vector<int> chosen;
  std::int64_t nodes = 0;
  auto compatible = [&](int cand) {
    for (int idx : chosen) {
      if (membership.count(RootSystem::key(radd(candidates[idx], candidates[cand]))))
        return false;
      if (membership.count(RootSystem::key(rsub(candidates[idx], candidates[cand]))))
        return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int start) -> bool {
    if (static_cast<int>(chosen.size()) == target) return true;
    for (int c = start; c < static_cast<int>(candidates.size()); ++c) {
      if (++nodes > budget)
        throw numeric_error("strongly_orthogonal: search budget exhausted");
      if (!compatible(c)) continue;
      chosen.push_back(c);
      if (self(self, c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!rec(rec, 0)) return false;
  out.clear();
  for (int idx : chosen) out.push_back(candidates[idx]);
  return true;
}

}  // namespace detail

// Full-rank strongly orthogonal system for the types where one exists.
inline std::vector<RVec> strongly_orthogonal(const RootSystem& sys) {
  const bool listed =
      (sys.family == Family::B && sys.rank >= 2) ||
      (sys.family == Family::C && sys.rank >= 3) ||
      (sys.family == Family::D && sys.rank >= 4 && sys.rank % 2 == 0) ||
      (sys.family == Family::E && (sys.rank == 7 || sys.rank == 8)) ||
      (sys.family == Family::F) || (sys.family == Family::G);
  if (!listed)
    throw usage_error("strongly_orthogonal: type " + family_name(sys.family) +
                      std::to_string(sys.rank) + " is not in the supported list");
  std::set<std::string> membership;
  for (const auto& r : sys.roots) membership.insert(RootSystem::key(r));
  std::vector<RVec> out;
  if (!detail::find_strongly_orthogonal(sys.positive, membership, sys.rank, out))
    throw numeric_error("strongly_orthogonal: no full-rank system found");
  return out;
}

}  // namespace latlab
