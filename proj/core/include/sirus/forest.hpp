#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sirus/dataset.hpp"
#include "sirus/path.hpp"
#include "sirus/quantiles.hpp"
#include "sirus/tree.hpp"

namespace sirus {

struct ForestParams {
  TreeParams tree;
  int q = 10;
  double alpha = 0.05;        // stability gap target
  int check_every = 100;      // trees between stopping-criterion checks
  long long max_trees = 100000;
  int threads = 0;            // worker cap; 0 = hardware concurrency
  std::uint64_t seed = 0;     // master seed; tree l uses derive_seed(seed, l)
};

// Path occurrence counts over M trees. Each tree contributes each of its
// distinct paths once, so every count lies in [1, M].
struct FrequencyTable {
  long long M = 0;
  std::map<Path, long long> counts;

  double phat(const Path& p) const {
    auto it = counts.find(p);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(M);
  }
};

// Tables from disjoint tree batches combine additively, in any order.
FrequencyTable merge(FrequencyTable a, const FrequencyTable& b);

struct ForestResult {
  FrequencyTable table;
  bool converged = false;  // false when max_trees hit before the criterion
};

// Grow trees in batches of check_every until the mean of epsilon over the
// p0_grid drops below alpha (or max_trees); alpha <= 0 disables the check and
// grows exactly max_trees trees. Per-tree seeds depend only on (master seed,
// tree index), so the result is identical for any thread count.
ForestResult grow_forest(const Dataset& ds, const QuantileGrid& grid, const ForestParams& params);

// P(X <= k) for X ~ Binomial(M, p). Stable for M up to 1e6 (relative error
// ~1e-12); exact for small M with dyadic p.
double binom_cdf(long long k, long long M, double p);

// Expected share of borderline paths at threshold p0: with
// F = binom_cdf(floor(M*p0), M, phat), returns sum F*(1-F) / sum (1-F) over
// observed paths; 0 when the denominator vanishes.
double epsilon(const FrequencyTable& ft, double p0);

// Candidate thresholds: midpoints between consecutive distinct phat values
// (descending, top 50 kept), returned ascending. Fewer than 2 distinct
// frequencies yield an empty grid.
std::vector<double> p0_grid(const FrequencyTable& ft);

// True once the grid is non-empty and the mean epsilon over it is below alpha.
bool stopping_satisfied(const FrequencyTable& ft, double alpha);

}  // namespace sirus
