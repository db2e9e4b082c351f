#pragma once

// The three normality tests applied to per-bowler runs-per-over samples:
// a chi-square goodness-of-fit test on binned counts, Shapiro-Wilk via
// Royston's approximation (AS R94), and Anderson-Darling with estimated
// mean and variance (Stephens' case 3).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bowlership/errors.hpp"
#include "bowlership/special.hpp"

namespace bowlership {

enum class NormalityTest { ChiSquare, ShapiroWilk, AndersonDarling };

inline const char* normality_test_name(NormalityTest t) {
  switch (t) {
    case NormalityTest::ChiSquare: return "chi_square";
    case NormalityTest::ShapiroWilk: return "shapiro_wilk";
    case NormalityTest::AndersonDarling: return "anderson_darling";
  }
  return "?";
}

struct NormalityVerdict {
  NormalityTest test = NormalityTest::ChiSquare;
  double statistic = 0.0;
  double p_value = 0.0;        // approximate for Anderson-Darling
  double critical_value = 0.0; // Anderson-Darling only, 0 otherwise
  bool pass = false;           // p > alpha, or statistic < critical for AD
  bool subsampled = false;     // Shapiro-Wilk on n > 5000
};

namespace detail {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;  // ddof = 1
};

inline Moments sample_moments(const std::vector<double>& x) {
  Moments m;
  const double n = static_cast<double>(x.size());
  for (double v : x) m.mean += v;
  m.mean /= n;
  double ss = 0.0;
  for (double v : x) ss += (v - m.mean) * (v - m.mean);
  m.sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return m;
}

inline bool is_integer_valued(const std::vector<double>& x) {
  for (double v : x)
    if (v != std::floor(v)) return false;
  return true;
}

// splitmix64: tiny portable generator for the fixed-seed subsample.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t bounded_u64(uint64_t& state, uint64_t bound) {
  // rejection sampling keeps this unbiased and platform-stable
  uint64_t limit = bound * (UINT64_MAX / bound);
  uint64_t v;
  do {
    v = splitmix64(state);
  } while (v >= limit);
  return v % bound;
}

}  // namespace detail

// Chi-square goodness of fit against a normal with the sample's mean/SD.
// Integer-valued data gets unit-width bins over its support; anything else
// gets equal-width bins. Adjacent bins are merged left to right until each
// group expects at least 5, and df = groups - 3 (two fitted parameters).
inline NormalityVerdict chi_square_normality(const std::vector<double>& sample, double alpha) {
  const int n = static_cast<int>(sample.size());
  if (n < 20) raise(errc::too_small, "chi_square_normality needs n >= 20");
  const auto mom = detail::sample_moments(sample);
  if (mom.sd <= 0.0) raise(errc::degenerate_sample, "chi_square_normality: zero variance");

  double lo = *std::min_element(sample.begin(), sample.end());
  double hi = *std::max_element(sample.begin(), sample.end());

  // interior bin edges; tails are open-ended so expected counts sum to n
  std::vector<double> edges;
  if (detail::is_integer_valued(sample) && hi - lo <= 100.0) {
    for (double k = lo; k < hi; k += 1.0) edges.push_back(k + 0.5);
  } else {
    int m = std::clamp(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)))), 8, 50);
    for (int i = 1; i < m; ++i) edges.push_back(lo + (hi - lo) * i / m);
  }

  const size_t nbins = edges.size() + 1;
  std::vector<double> observed(nbins, 0.0), expected(nbins, 0.0);
  for (double v : sample) {
    size_t b = static_cast<size_t>(std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    observed[b] += 1.0;
  }
  double prev_cdf = 0.0;
  for (size_t b = 0; b < nbins; ++b) {
    double c = b + 1 < nbins ? normal_cdf((edges[b] - mom.mean) / mom.sd) : 1.0;
    expected[b] = (c - prev_cdf) * n;
    prev_cdf = c;
  }

  // merge forward until each group expects >= 5; fold a short tail backward
  std::vector<std::pair<double, double>> groups;  // (observed, expected)
  double co = 0.0, ce = 0.0;
  for (size_t b = 0; b < nbins; ++b) {
    co += observed[b];
    ce += expected[b];
    if (ce >= 5.0) {
      groups.emplace_back(co, ce);
      co = ce = 0.0;
    }
  }
  if (co > 0.0 || ce > 0.0) {
    if (groups.empty()) groups.emplace_back(co, ce);
    else {
      groups.back().first += co;
      groups.back().second += ce;
    }
  }
  if (groups.size() > 1 && groups.back().second < 5.0) {
    auto tail = groups.back();
    groups.pop_back();
    groups.back().first += tail.first;
    groups.back().second += tail.second;
  }

  const int df = static_cast<int>(groups.size()) - 3;
  if (df < 1) raise(errc::too_small, "chi_square_normality: too few bins after merging");

  double stat = 0.0;
  for (const auto& [o, e] : groups) stat += (o - e) * (o - e) / e;

  NormalityVerdict v;
  v.test = NormalityTest::ChiSquare;
  v.statistic = stat;
  v.p_value = chi_square_sf(stat, df);
  v.pass = v.p_value > alpha;
  return v;
}

// Shapiro-Wilk W with Royston's weight and p-value approximations
// (Royston 1995, Applied Statistics algorithm R94). Samples above 5000
// observations are reduced to a fixed-seed subsample and flagged.
inline NormalityVerdict shapiro_wilk(const std::vector<double>& sample, double alpha,
                                     uint64_t seed = 1) {
  if (sample.size() < 3) raise(errc::too_small, "shapiro_wilk needs n >= 3");

  std::vector<double> x = sample;
  NormalityVerdict v;
  v.test = NormalityTest::ShapiroWilk;
  if (x.size() > 5000) {
    uint64_t state = seed ^ 0x8f4c2d1e9b3a7650ULL;
    for (size_t i = 0; i < 5000; ++i) {
      size_t j = i + static_cast<size_t>(detail::bounded_u64(state, x.size() - i));
      std::swap(x[i], x[j]);
    }
    x.resize(5000);
    v.subsampled = true;
  }
  std::sort(x.begin(), x.end());
  const int n = static_cast<int>(x.size());
  if (x.back() - x.front() <= 0.0)
    raise(errc::degenerate_sample, "shapiro_wilk: zero range");

  const int half = n / 2;
  std::vector<double> a(static_cast<size_t>(half));
  if (n == 3) {
    a[0] = std::sqrt(0.5);
  } else {
    // expected normal order statistics (Blom approximation), lower half
    double summ2 = 0.0;
    for (int i = 1; i <= half; ++i) {
      a[static_cast<size_t>(i - 1)] = normal_quantile((i - 0.375) / (n + 0.25));
      summ2 += a[static_cast<size_t>(i - 1)] * a[static_cast<size_t>(i - 1)];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
    auto poly5 = [](double u, double c1, double c2, double c3, double c4, double c5) {
      return ((((c5 * u + c4) * u + c3) * u + c2) * u + c1) * u;
    };
    const double a1 =
        poly5(rsn, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056) - a[0] / ssumm2;
    int start;
    double fac;
    if (n > 5) {
      const double a2 =
          poly5(rsn, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633) - a[1] / ssumm2;
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0] - 2.0 * a[1] * a[1]) /
                      (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[1] = a2;
      start = 2;
    } else {
      fac = std::sqrt((summ2 - 2.0 * a[0] * a[0]) / (1.0 - 2.0 * a1 * a1));
      start = 1;
    }
    a[0] = a1;
    for (int i = start; i < half; ++i) a[static_cast<size_t>(i)] = -a[static_cast<size_t>(i)] / fac;
  }

  double mean = 0.0;
  for (double xv : x) mean += xv;
  mean /= n;
  double ssq = 0.0;
  for (double xv : x) ssq += (xv - mean) * (xv - mean);
  double sax = 0.0;
  // a[i] is the positive weight of the (i+1)-th extreme pair
  for (int i = 0; i < half; ++i)
    sax += a[static_cast<size_t>(i)] *
           (x[static_cast<size_t>(n - 1 - i)] - x[static_cast<size_t>(i)]);
  double w_stat = sax * sax / ssq;
  if (w_stat > 1.0) w_stat = 1.0;
  v.statistic = w_stat;

  // p-value transforms (Royston 1995)
  double p;
  if (n == 3) {
    const double pi6 = 6.0 / 3.14159265358979323846;
    const double stqr = std::asin(std::sqrt(0.75));
    p = pi6 * (std::asin(std::sqrt(w_stat)) - stqr);
    p = std::clamp(p, 0.0, 1.0);
  } else {
    double z;
    if (1.0 - w_stat < 1e-15) {
      p = 1.0;
      v.p_value = p;
      v.pass = p > alpha;
      return v;
    }
    if (n <= 11) {
      const double g = -2.273 + 0.459 * n;
      const double y0 = std::log(1.0 - w_stat);
      if (y0 >= g) {
        v.p_value = 1e-99;
        v.pass = false;
        return v;
      }
      const double m = 0.5440 - 0.39978 * n + 0.025054 * n * n - 0.0006714 * n * n * n;
      const double s = std::exp(1.3822 - 0.77857 * n + 0.062767 * n * n - 0.0020322 * n * n * n);
      const double y = -std::log(g - y0);
      z = (y - m) / s;
    } else {
      const double ln = std::log(static_cast<double>(n));
      const double m = -1.5861 - 0.31082 * ln - 0.083751 * ln * ln + 0.0038915 * ln * ln * ln;
      const double s = std::exp(-0.4803 - 0.082676 * ln + 0.0030302 * ln * ln);
      z = (std::log(1.0 - w_stat) - m) / s;
    }
    p = normal_sf(z);
  }
  v.p_value = p;
  v.pass = p > alpha;
  return v;
}

namespace detail {

// Case-3 critical values for A^2 (mean and variance estimated): asymptotic
// points divided by (1 + 4/n - 25/n^2), per Stephens (1974).
inline double ad_critical_value(double alpha, int n) {
  static constexpr std::array<double, 5> levels = {0.15, 0.10, 0.05, 0.025, 0.01};
  static constexpr std::array<double, 5> asympt = {0.576, 0.656, 0.787, 0.918, 1.092};
  size_t best = 0;
  for (size_t i = 1; i < levels.size(); ++i)
    if (std::fabs(levels[i] - alpha) < std::fabs(levels[best] - alpha)) best = i;
  const double nn = static_cast<double>(n);
  return asympt[best] / (1.0 + 4.0 / nn - 25.0 / (nn * nn));
}

// Approximate p-value for the corrected statistic, D'Agostino & Stephens
// (1986), Table 4.9 formulas.
inline double ad_p_value(double a2, int n) {
  const double nn = static_cast<double>(n);
  const double aa = a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));
  if (aa < 0.2) return 1.0 - std::exp(-13.436 + 101.14 * aa - 223.73 * aa * aa);
  if (aa < 0.34) return 1.0 - std::exp(-8.318 + 42.796 * aa - 59.938 * aa * aa);
  if (aa < 0.6) return std::exp(0.9177 - 4.279 * aa - 1.38 * aa * aa);
  if (aa < 153.467) return std::exp(1.2937 - 5.709 * aa + 0.0186 * aa * aa);
  return 0.0;
}

}  // namespace detail

inline NormalityVerdict anderson_darling(const std::vector<double>& sample, double alpha) {
  const int n = static_cast<int>(sample.size());
  if (n < 8) raise(errc::too_small, "anderson_darling needs n >= 8");
  const auto mom = detail::sample_moments(sample);
  if (mom.sd <= 0.0) raise(errc::degenerate_sample, "anderson_darling: zero variance");

  std::vector<double> x = sample;
  std::sort(x.begin(), x.end());

  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double zi = (x[static_cast<size_t>(i)] - mom.mean) / mom.sd;
    const double zr = (x[static_cast<size_t>(n - 1 - i)] - mom.mean) / mom.sd;
    const double lo_tail = std::max(normal_cdf(zi), 1e-300);
    const double hi_tail = std::max(normal_sf(zr), 1e-300);
    acc += (2.0 * i + 1.0) * (std::log(lo_tail) + std::log(hi_tail));
  }
  const double a2 = -static_cast<double>(n) - acc / n;

  NormalityVerdict v;
  v.test = NormalityTest::AndersonDarling;
  v.statistic = a2;
  v.critical_value = detail::ad_critical_value(alpha, n);
  v.p_value = detail::ad_p_value(a2, n);
  v.pass = a2 < v.critical_value;
  return v;
}

// Pass/fail counts per test over a set of per-bowler samples. Samples a
// test cannot process (too small, zero variance) are skipped for that test.
struct BatteryRow {
  NormalityTest test;
  int fail = 0;
  int pass = 0;
};

inline std::array<BatteryRow, 3> normality_battery(
    const std::map<std::string, std::vector<double>>& samples, double alpha, uint64_t seed = 1) {
  std::array<BatteryRow, 3> rows = {BatteryRow{NormalityTest::ChiSquare},
                                    BatteryRow{NormalityTest::ShapiroWilk},
                                    BatteryRow{NormalityTest::AndersonDarling}};
  for (const auto& [name, sample] : samples) {
    (void)name;
    for (auto& row : rows) {
      try {
        NormalityVerdict v;
        switch (row.test) {
          case NormalityTest::ChiSquare: v = chi_square_normality(sample, alpha); break;
          case NormalityTest::ShapiroWilk: v = shapiro_wilk(sample, alpha, seed); break;
          case NormalityTest::AndersonDarling: v = anderson_darling(sample, alpha); break;
        }
        if (v.pass) ++row.pass;
        else ++row.fail;
      } catch (const error&) {
        // unprocessable sample for this test
      }
    }
  }
  return rows;
}

}  // namespace bowlership
