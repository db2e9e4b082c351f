#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bowlership/mann_whitney.hpp"
#include "support/oracles.hpp"
#include "support/rng.hpp"

using bowlership::MWMethod;
using bowlership::mann_whitney;

namespace {

std::vector<double> tied_sample(testsupport::Rng& rng, int n, int support) {
  std::vector<double> v(static_cast<size_t>(n));
  for (auto& x : v) x = static_cast<double>(rng.int_in(0, support));
  return v;
}

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("identical samples give U = n^2/2 and two-sided p of 1") {
  const std::vector<double> x = {1, 2, 2, 3, 7};
  const auto res = mann_whitney(x, x);
  REQUIRE(res.method == MWMethod::Exact);
  CHECK(res.u_statistic == Catch::Approx(12.5));  // 5*5/2
  CHECK(res.p_two_sided == 1.0);
  CHECK(res.p_greater >= 0.5);
  CHECK(res.p_less >= 0.5);
}

TEST_CASE("x=[1,2] vs y=[3,4]: one-sided exact p is 1/6") {
  const auto res = mann_whitney({1, 2}, {3, 4});
  REQUIRE(res.method == MWMethod::Exact);
  CHECK(res.u_statistic == 0.0);
  CHECK(res.p_less == Catch::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(res.p_greater == 1.0);
  CHECK(res.p_two_sided == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("tie-free exact case matches the reference implementation") {
  // scipy.stats.mannwhitneyu(x, y, method='exact')
  const std::vector<double> x = {1, 5, 7, 11};
  const std::vector<double> y = {2, 3, 8, 9, 10};
  const auto res = mann_whitney(x, y);
  REQUIRE(res.method == MWMethod::Exact);
  CHECK(res.u_statistic == 9.0);
  CHECK(res.p_greater == Catch::Approx(0.6349206349206349).epsilon(1e-12));
  CHECK(res.p_less == Catch::Approx(0.45238095238095244).epsilon(1e-12));
  CHECK(res.p_two_sided == Catch::Approx(0.9047619047619049).epsilon(1e-12));
}

TEST_CASE("tie-heavy asymptotic case matches the reference implementation") {
  // scipy.stats.mannwhitneyu(x, y, method='asymptotic'), n1=25, n2=30
  const std::vector<double> x = {0, 1, 1, 2, 2, 2, 3, 3, 4, 4, 5, 6, 6,
                                 7, 8, 2, 3, 1, 0, 5, 4, 4, 3, 2, 6};
  const std::vector<double> y = {1, 2, 2, 3, 3, 4, 4, 4, 5, 5, 6, 6, 7, 7, 8,
                                 9, 3, 4, 5, 2, 6, 7, 8, 4, 3, 5, 6, 2, 4, 5};
  const auto res = mann_whitney(x, y);
  REQUIRE(res.method == MWMethod::NormalApprox);
  CHECK(res.u_statistic == Catch::Approx(247.0));
  CHECK(res.p_greater == Catch::Approx(0.9858155265505121).epsilon(1e-10));
  CHECK(res.p_less == Catch::Approx(0.014811807619622142).epsilon(1e-10));
  CHECK(res.p_two_sided == Catch::Approx(0.029623615239244283).epsilon(1e-10));
}

TEST_CASE("full separation at n1=n2=100 drives the one-sided p to zero") {
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(i);
    y.push_back(1000 + i);
  }
  const auto res = mann_whitney(x, y);
  REQUIRE(res.method == MWMethod::NormalApprox);
  CHECK(res.p_less < 1e-10);
  CHECK(res.p_greater > 1.0 - 1e-10);
}

TEST_CASE("empty samples are rejected") {
  CHECK_THROWS_AS(mann_whitney({}, {1.0}), bowlership::error);
  CHECK_THROWS_AS(mann_whitney({1.0}, {}), bowlership::error);
}

TEST_CASE("all values tied collapses every p to 1") {
  const auto res = mann_whitney({5, 5, 5}, {5, 5});
  CHECK(res.u_statistic == Catch::Approx(3.0));
  CHECK(res.p_greater == 1.0);
  CHECK(res.p_less == 1.0);
  CHECK(res.p_two_sided == 1.0);

  // approximation path with zero variance behaves the same
  const std::vector<double> big_x(30, 2.0), big_y(20, 2.0);
  const auto approx = mann_whitney(big_x, big_y);
  REQUIRE(approx.method == MWMethod::NormalApprox);
  CHECK(approx.p_two_sided == 1.0);
}

TEST_CASE("exact_cutoff picks the method by combined sample size") {
  const std::vector<double> x = {1, 2, 3}, y = {4, 5};
  CHECK(mann_whitney(x, y, 5).method == MWMethod::Exact);
  CHECK(mann_whitney(x, y, 4).method == MWMethod::NormalApprox);
}

TEST_CASE("exact path equals full enumeration on random tie-heavy samples") {
  testsupport::Rng rng(2024);
  for (int iter = 0; iter < 60; ++iter) {
    const int n1 = rng.int_in(2, 7);
    const int n2 = rng.int_in(2, 7);
    const auto x = tied_sample(rng, n1, 4);
    const auto y = tied_sample(rng, n2, 4);
    const auto res = mann_whitney(x, y);
    REQUIRE(res.method == MWMethod::Exact);
    const auto oracle = testsupport::mw_exact_enumeration(x, y);
    CHECK(res.u_statistic == Catch::Approx(oracle.u).margin(1e-12));
    CHECK(res.p_greater == Catch::Approx(oracle.p_greater).margin(1e-12));
    CHECK(res.p_less == Catch::Approx(oracle.p_less).margin(1e-12));
    CHECK(res.p_two_sided == Catch::Approx(oracle.p_two_sided).margin(1e-12));
  }
}

TEST_CASE("label symmetry: p_greater(x,y) equals p_less(y,x) exactly") {
  testsupport::Rng rng(77);
  for (int iter = 0; iter < 30; ++iter) {
    const auto x = tied_sample(rng, rng.int_in(2, 12), 6);
    const auto y = tied_sample(rng, rng.int_in(2, 12), 6);
    for (int cutoff : {20, 2}) {
      const auto a = mann_whitney(x, y, cutoff);
      const auto b = mann_whitney(y, x, cutoff);
      CHECK(a.p_greater == b.p_less);
      CHECK(a.p_less == b.p_greater);
      CHECK(a.p_two_sided == b.p_two_sided);
    }
  }
}

TEST_CASE("U is invariant under strictly monotone transforms") {
  testsupport::Rng rng(5150);
  for (int iter = 0; iter < 20; ++iter) {
    auto x = tied_sample(rng, rng.int_in(3, 10), 8);
    auto y = tied_sample(rng, rng.int_in(3, 10), 8);
    const auto base = mann_whitney(x, y);
    for (auto& v : x) v = std::exp(v / 3.0);
    for (auto& v : y) v = std::exp(v / 3.0);
    const auto mapped = mann_whitney(x, y);
    CHECK(base.u_statistic == mapped.u_statistic);
    CHECK(base.p_greater == mapped.p_greater);
    CHECK(base.p_less == mapped.p_less);
  }
}

TEST_CASE("exact p-values are rationals over C(n1+n2, n1)") {
  testsupport::Rng rng(31337);
  for (int iter = 0; iter < 20; ++iter) {
    const int n1 = rng.int_in(2, 8), n2 = rng.int_in(2, 8);
    const auto x = tied_sample(rng, n1, 5);
    const auto y = tied_sample(rng, n2, 5);
    const auto res = mann_whitney(x, y);
    REQUIRE(res.method == MWMethod::Exact);
    const double denom = binom(n1 + n2, n1);
    for (double p : {res.p_greater, res.p_less}) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      const double scaled = p * denom;
      CHECK(std::abs(scaled - std::round(scaled)) < 1e-6);
    }
  }
}

TEST_CASE("normal approximation tracks the exact p within 0.02 for tie-free n1=n2=10") {
  testsupport::Rng rng(9090);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
      x.push_back(rng.normal());
      y.push_back(rng.normal(0.4));
    }
    const auto exact = mann_whitney(x, y, 20);
    const auto approx = mann_whitney(x, y, 2);
    REQUIRE(exact.method == MWMethod::Exact);
    REQUIRE(approx.method == MWMethod::NormalApprox);
    CHECK(std::abs(exact.p_greater - approx.p_greater) < 0.02);
    CHECK(std::abs(exact.p_less - approx.p_less) < 0.02);
    CHECK(std::abs(exact.p_two_sided - approx.p_two_sided) < 0.04);
  }
}

TEST_CASE("ties keep p_greater + p_less at or above 1 under the approximation") {
  testsupport::Rng rng(4242);
  for (int iter = 0; iter < 25; ++iter) {
    const auto x = tied_sample(rng, 25, 5);
    const auto y = tied_sample(rng, 25, 5);
    const auto res = mann_whitney(x, y);
    REQUIRE(res.method == MWMethod::NormalApprox);
    CHECK(res.p_greater + res.p_less >= 1.0);
    CHECK(std::min(res.p_greater, res.p_less) <= res.p_two_sided);
  }
}
