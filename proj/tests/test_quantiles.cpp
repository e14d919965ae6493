#include <doctest.h>

#include <algorithm>

#include "sirus/quantiles.hpp"
#include "sirus/rng.hpp"

using sirus::Dataset;
using sirus::QuantileGrid;

namespace {
Dataset one_feature(std::vector<double> x) {
  Dataset ds;
  ds.n = static_cast<int>(x.size());
  ds.p = 1;
  ds.xcol = std::move(x);
  ds.feature_names = {"x"};
  return ds;
}
}  // namespace

TEST_CASE("halves of 1..4") {
  const QuantileGrid g = sirus::empirical_quantiles(one_feature({1, 2, 3, 4}), 2);
  REQUIRE(g.cuts[0].size() == 1);
  CHECK(g.cuts[0][0].r == 1);
  CHECK(g.cuts[0][0].value == 2.0);
}

TEST_CASE("quarters of 1..4") {
  const QuantileGrid g = sirus::empirical_quantiles(one_feature({1, 2, 3, 4}), 4);
  REQUIRE(g.cuts[0].size() == 3);
  CHECK(g.cuts[0][0].r == 1);
  CHECK(g.cuts[0][0].value == 1.0);
  CHECK(g.cuts[0][1].r == 2);
  CHECK(g.cuts[0][1].value == 2.0);
  CHECK(g.cuts[0][2].r == 3);
  CHECK(g.cuts[0][2].value == 3.0);
}

TEST_CASE("constant feature collapses to one cut") {
  const QuantileGrid g = sirus::empirical_quantiles(one_feature({5, 5, 5, 5}), 10);
  REQUIRE(g.cuts[0].size() == 1);
  CHECK(g.cuts[0][0].r == 1);
  CHECK(g.cuts[0][0].value == 5.0);
}

TEST_CASE("unsorted input gives the same grid") {
  const QuantileGrid a = sirus::empirical_quantiles(one_feature({4, 1, 3, 2}), 4);
  const QuantileGrid b = sirus::empirical_quantiles(one_feature({1, 2, 3, 4}), 4);
  REQUIRE(a.cuts[0].size() == b.cuts[0].size());
  for (std::size_t i = 0; i < a.cuts[0].size(); ++i) {
    CHECK(a.cuts[0][i].r == b.cuts[0][i].r);
    CHECK(a.cuts[0][i].value == b.cuts[0][i].value);
  }
}

TEST_CASE("infimum definition on random data") {
  sirus::Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng.below(40));
    const int q = 2 + static_cast<int>(rng.below(12));
    std::vector<double> x(n);
    for (double& v : x) v = static_cast<double>(rng.below(8));  // force ties
    const QuantileGrid g = sirus::empirical_quantiles(one_feature(x), q);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    // direct scan oracle: smallest data value with #{x_i <= v} * q >= r * n
    std::vector<double> expect_value;
    std::vector<int> expect_r;
    for (int r = 1; r < q; ++r) {
      double val = sorted.back();
      for (double cand : sorted) {
        const long long below_eq = std::upper_bound(sorted.begin(), sorted.end(), cand) -
                                   sorted.begin();
        if (below_eq * q >= static_cast<long long>(r) * n) {
          val = cand;
          break;
        }
      }
      if (expect_value.empty() || expect_value.back() != val) {
        expect_value.push_back(val);
        expect_r.push_back(r);
      }
    }
    REQUIRE(g.cuts[0].size() == expect_value.size());
    for (std::size_t i = 0; i < expect_value.size(); ++i) {
      CHECK(g.cuts[0][i].value == expect_value[i]);
      CHECK(g.cuts[0][i].r == expect_r[i]);
    }
  }
}

TEST_CASE("values strictly increase and are observed data") {
  sirus::Rng rng(17);
  std::vector<double> x(100);
  for (double& v : x) v = static_cast<double>(rng.below(20));
  const QuantileGrid g = sirus::empirical_quantiles(one_feature(x), 10);
  for (std::size_t i = 0; i + 1 < g.cuts[0].size(); ++i)
    CHECK(g.cuts[0][i].value < g.cuts[0][i + 1].value);
  for (const sirus::Cut& c : g.cuts[0])
    CHECK(std::count(x.begin(), x.end(), c.value) > 0);
}

TEST_CASE("value_of") {
  const QuantileGrid g = sirus::empirical_quantiles(one_feature({1, 2, 3, 4}), 4);
  CHECK(g.value_of(0, 2) == 2.0);
  CHECK_THROWS(g.value_of(0, 9));
}
