#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "latlab/common.hpp"
#include "latlab/parallel.hpp"
#include "latlab/rng.hpp"
#include "latlab/stats.hpp"

namespace latlab {

// Increasing N-valued increment process with a conditional-tail certificate:
// P(xi_i - xi_{i-1} >= q | past) <= C0 exp(-q theta0) for q >= 1.
struct IncrementProcess {
  double C0 = 1.0;
  double theta0 = 1.0;
  // Returns xi_0 .. xi_{n_max} (xi_0 = 0, nondecreasing).
  std::function<std::vector<std::int64_t>(std::uint64_t seed, int n_max)> sample_path;
};

struct LDConstants {
  double theta = 0.0;
  int Q = 0;
};

// Explicit constants making the truncated-gap average obey the exponential
// bound: theta = eps * theta0 / 4 and the smallest integer Q at least
// 2 log[C0^{-1}(e^{eps theta0/4} - 1)(1 - e^{-theta0/2})] / (-theta0).
inline LDConstants derive_constants(double C0, double theta0, double eps) {
  if (!(C0 >= 1.0)) throw usage_error("derive_constants: C0 must be >= 1");
  if (!(theta0 > 0.0)) throw usage_error("derive_constants: theta0 must be positive");
  if (!(eps > 0.0 && eps < 1.0))
    throw usage_error("derive_constants: eps must lie in (0,1)");
  LDConstants out;
  out.theta = eps * theta0 / 4.0;
  const double arg =
      (std::exp(eps * theta0 / 4.0) - 1.0) * (1.0 - std::exp(-theta0 / 2.0)) / C0;
  const double bound = 2.0 * std::log(arg) / (-theta0);
  out.Q = std::max<int>(1, static_cast<int>(std::ceil(bound - 1e-12)));
  return out;
}

// Truncation 1_Q: q if q >= Q, else 0.
inline std::int64_t truncate_gap(int Q, std::int64_t q) {
  if (Q < 1) throw usage_error("truncate_gap: Q must be >= 1");
  return q >= Q ? q : 0;
}

// Per-n base of the bound: with Q from derive_constants it is <= e^{-theta}.
inline double rhs_base(double C0, double theta0, int Q, double eps) {
  if (!(C0 > 0.0 && theta0 > 0.0))
    throw usage_error("rhs_base: parameters must be positive");
  const double denom = 1.0 - std::exp(-theta0 / 2.0);
  return (denom + C0 * std::exp(-Q * theta0 / 2.0)) /
         (std::exp(eps * theta0 / 2.0) * denom);
}

struct LDRow {
  int n = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double stderr_ = 0.0;
};

struct LDResult {
  LDConstants constants;
  std::vector<LDRow> rows;
  // Thresholds q where the pooled gap tail exceeded the certificate by more
  // than 3 binomial standard errors; the run continues regardless.
  std::vector<int> certificate_violations;
};

inline LDResult empirical_ld(const IncrementProcess& proc, double eps, int n_max,
                             int trials, std::uint64_t seed, unsigned workers = 1) {
  LDResult res;
  res.constants = derive_constants(proc.C0, proc.theta0, eps);
  const int Q = res.constants.Q;

  std::vector<std::vector<std::uint8_t>> exceed(trials);
  std::vector<std::vector<std::int64_t>> gap_pool(trials);
  Rng root(seed);
  parallel_for(trials, workers, [&](std::size_t trial) {
    const std::uint64_t s = splitmix64_mix(seed, trial);
    const auto path = proc.sample_path(s, n_max);
    std::vector<std::uint8_t> ind(n_max + 1, 0);
    std::vector<std::int64_t> gaps;
    gaps.reserve(n_max);
    std::int64_t sum = 0;
    for (int i = 1; i <= n_max && i < static_cast<int>(path.size()); ++i) {
      const std::int64_t gap = path[i] - path[i - 1];
      gaps.push_back(gap);
      sum += truncate_gap(Q, gap);
      if (static_cast<double>(sum) / i >= eps) ind[i] = 1;
    }
    exceed[trial] = std::move(ind);
    gap_pool[trial] = std::move(gaps);
  });

  for (int n = 1; n <= n_max; ++n) {
    std::int64_t hits = 0;
    for (int trial = 0; trial < trials; ++trial)
      if (n < static_cast<int>(exceed[trial].size()) && exceed[trial][n]) ++hits;
    LDRow row;
    row.n = n;
    row.empirical = static_cast<double>(hits) / trials;
    row.bound = std::exp(-res.constants.theta * n);
    row.stderr_ = binomial_stderr(row.empirical, trials);
    res.rows.push_back(row);
  }

  // Marginal certificate check on the pooled gaps.
  std::vector<std::int64_t> all;
  for (auto& g : gap_pool) all.insert(all.end(), g.begin(), g.end());
  if (!all.empty()) {
    std::int64_t maxgap = 1;
    for (auto g : all) maxgap = std::max(maxgap, g);
    for (int q = 1; q <= maxgap; ++q) {
      std::int64_t c = 0;
      for (auto g : all)
        if (g >= q) ++c;
      const double tail = static_cast<double>(c) / all.size();
      const double cert = proc.C0 * std::exp(-q * proc.theta0);
      if (tail > cert + 3.0 * binomial_stderr(tail, all.size()))
        res.certificate_violations.push_back(q);
    }
  }
  return res;
}

// Gap with exact tail P(gap >= q) = e^{-q theta0} for q >= 1 (floor of an
// exponential variable).
inline IncrementProcess geometric_process(double theta0) {
  IncrementProcess proc;
  proc.C0 = 1.0;
  proc.theta0 = theta0;
  proc.sample_path = [theta0](std::uint64_t seed, int n_max) {
    Rng rng(seed);
    std::vector<std::int64_t> path(n_max + 1, 0);
    for (int i = 1; i <= n_max; ++i) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      const auto gap = static_cast<std::int64_t>(std::floor(-std::log(u) / theta0));
      path[i] = path[i - 1] + gap;
    }
    return path;
  };
  return proc;
}

// Gap tail exactly saturating the certificate: P(gap >= q) = min(1, C0 e^{-q theta0}).
inline IncrementProcess saturating_process(double C0, double theta0) {
  IncrementProcess proc;
  proc.C0 = C0;
  proc.theta0 = theta0;
  proc.sample_path = [C0, theta0](std::uint64_t seed, int n_max) {
    Rng rng(seed);
    std::vector<std::int64_t> path(n_max + 1, 0);
    for (int i = 1; i <= n_max; ++i) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      // largest q >= 0 with u < min(1, C0 e^{-q theta0})
      const double qreal = (std::log(C0) - std::log(u)) / theta0;
      std::int64_t gap = static_cast<std::int64_t>(std::floor(qreal));
      if (u < C0 * std::exp(-(gap + 1) * theta0)) ++gap; // boundary guard
      gap = std::max<std::int64_t>(gap, 0);
      path[i] = path[i - 1] + gap;
    }
    return path;
  };
  return proc;
}

}  // namespace latlab
