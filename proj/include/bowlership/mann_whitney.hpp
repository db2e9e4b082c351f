#pragma once

// Mann-Whitney U test with midrank tie handling. Small samples take the
// exact route: the full permutation distribution of U conditional on the
// pooled (possibly tied) data, computed by counting subsets per rank sum.
// Larger samples use the normal approximation with the tie-corrected
// variance (Conover 1999) and a 0.5 continuity correction.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "bowlership/errors.hpp"
#include "bowlership/special.hpp"

namespace bowlership {

enum class MWMethod { Exact, NormalApprox };

inline const char* mw_method_name(MWMethod m) {
  return m == MWMethod::Exact ? "EXACT" : "NORMAL_APPROX";
}

struct MWResult {
  double u_statistic = 0.0;  // U of the first sample
  double p_greater = 1.0;    // alternative: x stochastically greater than y
  double p_two_sided = 1.0;
  double p_less = 1.0;
  MWMethod method = MWMethod::NormalApprox;
  int n1 = 0;
  int n2 = 0;
};

namespace detail {

// Midranks of the pooled sample, doubled so they stay integral
// (a midrank is always a multiple of 1/2). Also returns tie group sizes.
struct PooledRanks {
  std::vector<int64_t> doubled_rank;  // per pooled element, input order
  std::vector<int> tie_sizes;
};

inline PooledRanks doubled_midranks(const std::vector<double>& pooled) {
  const size_t n = pooled.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return pooled[a] < pooled[b]; });
  PooledRanks out;
  out.doubled_rank.assign(n, 0);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    // 1-based positions i+1 .. j+1 share midrank (i+j+2)/2
    const int64_t doubled = static_cast<int64_t>(i) + static_cast<int64_t>(j) + 2;
    for (size_t k = i; k <= j; ++k) out.doubled_rank[order[k]] = doubled;
    out.tie_sizes.push_back(static_cast<int>(j - i + 1));
    i = j + 1;
  }
  return out;
}

// Number of size-n1 subsets of the pooled doubled ranks per doubled rank
// sum. Equivalent to enumerating all C(N,n1) group assignments.
inline std::vector<std::vector<uint64_t>> subset_counts_by_sum(
    const std::vector<int64_t>& doubled_ranks, int n1) {
  int64_t total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), int64_t{0});
  std::vector<std::vector<uint64_t>> dp(
      static_cast<size_t>(n1) + 1, std::vector<uint64_t>(static_cast<size_t>(total) + 1, 0));
  dp[0][0] = 1;
  for (int64_t r : doubled_ranks) {
    for (int sz = n1 - 1; sz >= 0; --sz) {
      auto& src = dp[static_cast<size_t>(sz)];
      auto& dst = dp[static_cast<size_t>(sz) + 1];
      for (int64_t s = total - r; s >= 0; --s) {
        uint64_t c = src[static_cast<size_t>(s)];
        if (c) dst[static_cast<size_t>(s + r)] += c;
      }
    }
  }
  return dp;
}

}  // namespace detail

inline MWResult mann_whitney(const std::vector<double>& x, const std::vector<double>& y,
                             int exact_cutoff = 20) {
  if (x.empty() || y.empty()) raise(errc::empty_sample, "mann_whitney needs nonempty samples");
  const int n1 = static_cast<int>(x.size());
  const int n2 = static_cast<int>(y.size());
  const int n = n1 + n2;

  std::vector<double> pooled;
  pooled.reserve(static_cast<size_t>(n));
  pooled.insert(pooled.end(), x.begin(), x.end());
  pooled.insert(pooled.end(), y.begin(), y.end());
  const auto ranks = detail::doubled_midranks(pooled);

  int64_t doubled_rx = 0;
  for (int i = 0; i < n1; ++i) doubled_rx += ranks.doubled_rank[static_cast<size_t>(i)];

  MWResult res;
  res.n1 = n1;
  res.n2 = n2;
  // U1 = R1 - n1(n1+1)/2
  res.u_statistic =
      static_cast<double>(doubled_rx) / 2.0 - static_cast<double>(n1) * (n1 + 1) / 2.0;

  if (n <= exact_cutoff) {
    res.method = MWMethod::Exact;
    auto dp = detail::subset_counts_by_sum(ranks.doubled_rank, n1);
    const auto& dist = dp[static_cast<size_t>(n1)];
    uint64_t total = 0, ge = 0, le = 0;
    for (int64_t s = 0; s < static_cast<int64_t>(dist.size()); ++s) {
      uint64_t c = dist[static_cast<size_t>(s)];
      if (!c) continue;
      total += c;
      if (s >= doubled_rx) ge += c;
      if (s <= doubled_rx) le += c;
    }
    res.p_greater = static_cast<double>(ge) / static_cast<double>(total);
    res.p_less = static_cast<double>(le) / static_cast<double>(total);
  } else {
    res.method = MWMethod::NormalApprox;
    const double u = res.u_statistic;
    const double mean = static_cast<double>(n1) * n2 / 2.0;
    double tie_term = 0.0;
    for (int t : ranks.tie_sizes)
      tie_term += static_cast<double>(t) * t * t - t;
    const double var = static_cast<double>(n1) * n2 / 12.0 *
                       ((n + 1) - tie_term / (static_cast<double>(n) * (n - 1)));
    if (var <= 0.0) {
      // every pooled value identical: U is deterministic at its mean
      res.p_greater = res.p_less = res.p_two_sided = 1.0;
      return res;
    }
    const double sd = std::sqrt(var);
    res.p_greater = normal_sf((u - mean - 0.5) / sd);
    res.p_less = normal_cdf((u - mean + 0.5) / sd);
  }
  res.p_two_sided = std::min(1.0, 2.0 * std::min(res.p_greater, res.p_less));
  return res;
}

}  // namespace bowlership
