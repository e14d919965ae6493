#pragma once

#include <string>
#include <vector>

#include "sirus/dataset.hpp"
#include "sirus/rng.hpp"

namespace testsupport {

// Features uniform on a fine grid in [0,1); labels driven by feature 0:
// P(y=1) = hi above the median of feature 0, lo below it.
inline sirus::Dataset informative(int n, int p, std::uint64_t seed, unsigned hi_tenths = 9,
                                  unsigned lo_tenths = 1) {
  sirus::Rng rng(seed);
  sirus::Dataset ds;
  ds.n = n;
  ds.p = p;
  ds.xcol.resize(static_cast<std::size_t>(n) * p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i)
      ds.xcol[static_cast<std::size_t>(j) * n + i] =
          static_cast<double>(rng.below(100000)) / 100000.0;
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const bool above = ds.xcol[i] >= 0.5;
    ds.y[i] = rng.below(10) < (above ? hi_tenths : lo_tenths) ? 1 : 0;
  }
  for (int j = 0; j < p; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  return ds;
}

// Pure noise: features and labels independent.
inline sirus::Dataset noise(int n, int p, std::uint64_t seed) {
  sirus::Rng rng(seed);
  sirus::Dataset ds;
  ds.n = n;
  ds.p = p;
  ds.xcol.resize(static_cast<std::size_t>(n) * p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i)
      ds.xcol[static_cast<std::size_t>(j) * n + i] =
          static_cast<double>(rng.below(100000)) / 100000.0;
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) ds.y[i] = static_cast<std::uint8_t>(rng.below(2));
  for (int j = 0; j < p; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  return ds;
}

}  // namespace testsupport
