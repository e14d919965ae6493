#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "sirus/rules.hpp"

namespace sirus {

namespace {

using bigint = boost::multiprecision::cpp_int;

// One basis vector in incremental echelon form: zero at the pivots of every
// earlier row, so reducing a fresh vector row-by-row in insertion order never
// reintroduces an already-cleared coordinate.
struct BasisRow {
  std::vector<bigint> v;
  std::size_t pivot = 0;
};

// Divide out the integer content and make the pivot positive.
void normalize(std::vector<bigint>& v) {
  bigint g = 0;
  for (const bigint& x : v) {
    if (x != 0) g = boost::multiprecision::gcd(g, boost::multiprecision::abs(x));
    if (g == 1) break;
  }
  if (g > 1)
    for (bigint& x : v) x /= g;
  for (const bigint& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (bigint& y : v) y = -y;
    break;
  }
}

// v <- pv*v - c*row zeroes v at the row's pivot; integer-only elimination is
// the same decision as rational Gaussian elimination, without fractions.
void eliminate(std::vector<bigint>& v, const BasisRow& row) {
  const bigint c = v[row.pivot];
  if (c == 0) return;
  const bigint pv = row.v[row.pivot];
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = pv * v[i] - c * row.v[i];
}

}  // namespace

std::vector<std::uint8_t> independence_marks(const std::vector<Path>& paths, const Dataset& ds,
                                             const QuantileGrid& grid) {
  const std::size_t np = paths.size();
  std::vector<std::uint8_t> marks(np, 0);
  if (np == 0) return marks;

  // Coverage bitmask of every candidate per training point. Points with equal
  // masks are equal coordinates in every vector involved, so one column per
  // distinct mask decides dependence over the full sample.
  const std::size_t words = (np + 63) / 64;
  std::vector<std::uint64_t> mask(static_cast<std::size_t>(ds.n) * words, 0);
  for (std::size_t t = 0; t < np; ++t) {
    for (int i = 0; i < ds.n; ++i)
      if (path_covers_row(paths[t], ds, grid, i))
        mask[static_cast<std::size_t>(i) * words + t / 64] |= 1ull << (t % 64);
  }
  std::map<std::vector<std::uint64_t>, int> seen;
  std::vector<std::vector<std::uint64_t>> cols;
  std::vector<std::uint64_t> key(words);
  for (int i = 0; i < ds.n; ++i) {
    std::copy_n(mask.begin() + static_cast<std::size_t>(i) * words, words, key.begin());
    if (seen.emplace(key, static_cast<int>(cols.size())).second) cols.push_back(key);
  }
  const std::size_t m = cols.size();

  std::vector<BasisRow> basis;
  basis.push_back({std::vector<bigint>(m, 1), 0});  // the constant vector

  std::vector<bigint> v(m);
  for (std::size_t t = 0; t < np; ++t) {
    for (std::size_t c = 0; c < m; ++c)
      v[c] = (cols[c][t / 64] >> (t % 64)) & 1 ? 1 : 0;
    for (const BasisRow& row : basis) eliminate(v, row);
    std::size_t pivot = m;
    for (std::size_t c = 0; c < m; ++c) {
      if (v[c] != 0) {
        pivot = c;
        break;
      }
    }
    if (pivot == m) continue;  // in the span: dropped
    marks[t] = 1;
    normalize(v);
    basis.push_back({v, pivot});
  }
  return marks;
}

std::vector<Path> post_treat(const std::vector<Path>& paths, const Dataset& ds,
                             const QuantileGrid& grid) {
  const std::vector<std::uint8_t> marks = independence_marks(paths, ds, grid);
  std::vector<Path> kept;
  for (std::size_t t = 0; t < paths.size(); ++t)
    if (marks[t]) kept.push_back(paths[t]);
  return kept;
}

}  // namespace sirus
