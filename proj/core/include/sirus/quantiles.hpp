#pragma once

#include <vector>

#include "sirus/dataset.hpp"

namespace sirus {

// One allowed cut of a feature: r-th q-quantile with its data value.
struct Cut {
  int r = 0;  // quantile index in 1..q-1
  double value = 0.0;
};

// Per-feature split positions. Values strictly increase within a feature;
// duplicate quantile values are collapsed keeping the smallest r, so a path's
// (j, r) pair identifies a unique cut value.
struct QuantileGrid {
  int q = 10;
  std::vector<std::vector<Cut>> cuts;  // indexed by feature

  int p() const { return static_cast<int>(cuts.size()); }
  // Value of cut (j, r); the pair must exist in the grid.
  double value_of(int j, int r) const;
};

// q-quantiles per feature: inf{x : (1/n) #{i : x_i <= x} >= r/q}, i.e. the
// ceil(n*r/q)-th order statistic.
QuantileGrid empirical_quantiles(const Dataset& ds, int q);

}  // namespace sirus
