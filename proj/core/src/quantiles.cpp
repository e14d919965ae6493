#include "sirus/quantiles.hpp"

#include <algorithm>
#include <cmath>

#include "sirus/errors.hpp"

namespace sirus {

double QuantileGrid::value_of(int j, int r) const {
  for (const Cut& c : cuts[j])
    if (c.r == r) return c.value;
  throw DataError("no cut with order " + std::to_string(r) + " on feature " + std::to_string(j));
}

QuantileGrid empirical_quantiles(const Dataset& ds, int q) {
  if (q < 2) throw DataError("q must be at least 2");
  if (ds.n < 1) throw DataError("empty dataset");
  QuantileGrid g;
  g.q = q;
  g.cuts.resize(ds.p);
  std::vector<double> v(ds.n);
  for (int j = 0; j < ds.p; ++j) {
    const double* col = ds.col(j);
    std::copy(col, col + ds.n, v.begin());
    std::sort(v.begin(), v.end());
    auto& cj = g.cuts[j];
    for (int r = 1; r <= q - 1; ++r) {
      // smallest x with ecdf(x) >= r/q: the ceil(n*r/q)-th order statistic
      const long long m = (static_cast<long long>(ds.n) * r + q - 1) / q;
      const double val = v[m - 1];
      // ties collapse onto the first order that reaches the value
      if (!cj.empty() && cj.back().value == val) continue;
      cj.push_back({r, val});
    }
  }
  return g;
}

}  // namespace sirus
