#include "sirus/tree.hpp"

#include <algorithm>
#include <cassert>

namespace sirus {

namespace {

using i128 = __int128;

struct Counts {
  long long s = 0;   // label sum in node
  long long n = 0;   // points in node
  long long sl = 0;  // label sum going left
  long long nl = 0;  // points going left
};

Counts tally(const std::vector<std::uint8_t>& labels, const std::vector<char>& in_node,
             const std::vector<char>& go_left) {
  Counts c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!in_node[i]) continue;
    c.n += 1;
    c.s += labels[i];
    if (go_left[i]) {
      c.nl += 1;
      c.sl += labels[i];
    }
  }
  return c;
}

}  // namespace

double cart_criterion(const std::vector<std::uint8_t>& labels, const std::vector<char>& in_node,
                      const std::vector<char>& go_left) {
  const Counts c = tally(labels, in_node, go_left);
  const long long nr = c.n - c.nl;
  const long long sr = c.s - c.sl;
  assert(c.n >= 2 && c.nl > 0 && nr > 0);
  const double left = static_cast<double>(c.sl) * c.sl / static_cast<double>(c.nl);
  const double right = static_cast<double>(sr) * sr / static_cast<double>(nr);
  const double whole = static_cast<double>(c.s) * c.s / static_cast<double>(c.n);
  return (left + right - whole) / static_cast<double>(c.n);
}

Frac cart_criterion_exact(const std::vector<std::uint8_t>& labels, const std::vector<char>& in_node,
                          const std::vector<char>& go_left) {
  const Counts c = tally(labels, in_node, go_left);
  const long long nr = c.n - c.nl;
  const long long sr = c.s - c.sl;
  assert(c.n >= 2 && c.nl > 0 && nr > 0);
  // (sl^2/nl + sr^2/nr - s^2/n) / n over the common denominator n^2*nl*nr
  i128 num = i128(c.sl) * c.sl * nr * c.n + i128(sr) * sr * c.nl * c.n -
             i128(c.s) * c.s * c.nl * nr;
  i128 den = i128(c.n) * c.n * c.nl * nr;
  i128 g = num < 0 ? -num : num;
  i128 h = den;
  while (h) {
    const i128 t = g % h;
    g = h;
    h = t;
  }
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  assert(num <= i128(9223372036854775807ll) && den <= i128(9223372036854775807ll));
  return Frac{static_cast<long long>(num), static_cast<long long>(den)};
}

namespace detail {

BinnedData bin_dataset(const Dataset& ds, const QuantileGrid& grid) {
  BinnedData bd;
  bd.n = ds.n;
  bd.p = ds.p;
  bd.ncuts.resize(ds.p);
  bd.bin.assign(static_cast<std::size_t>(ds.n) * ds.p, 0);
  for (int j = 0; j < ds.p; ++j) {
    const auto& cj = grid.cuts[j];
    bd.ncuts[j] = static_cast<std::uint16_t>(cj.size());
    const double* col = ds.col(j);
    std::uint16_t* out = bd.bin.data() + static_cast<std::size_t>(j) * ds.n;
    for (int i = 0; i < ds.n; ++i) {
      // count of cut values <= x; the grid is tiny, a scan beats binary search
      std::uint16_t b = 0;
      while (b < cj.size() && cj[b].value <= col[i]) ++b;
      out[i] = b;
    }
  }
  return bd;
}

namespace {

struct Candidate {
  int j = -1;
  int k = -1;  // index into grid.cuts[j]
};

// Scratch reused across the three nodes of one tree.
struct Scratch {
  std::vector<long long> cnt;
  std::vector<long long> sum;
  std::vector<Candidate> ties;
};

// Criterion maximizer over the node's rows among the drawn features. Within a
// node the criterion orders candidates like sl^2/nl + sr^2/nr, compared here
// as exact integer fractions so ties are genuine and platform-independent.
// Consumes one tie-break draw whenever at least one candidate is valid.
Candidate best_split(const Dataset& ds, const BinnedData& bd, const std::vector<int>& rows,
                     const std::vector<int>& feats, Rng& rng, Scratch& sc) {
  const long long n_node = static_cast<long long>(rows.size());
  long long s_node = 0;
  for (int i : rows) s_node += ds.y[i];

  i128 best_a = -1;
  i128 best_b = 1;
  sc.ties.clear();
  for (int j : feats) {
    const int m = bd.ncuts[j];
    if (m == 0) continue;
    std::fill(sc.cnt.begin(), sc.cnt.begin() + m + 1, 0ll);
    std::fill(sc.sum.begin(), sc.sum.begin() + m + 1, 0ll);
    const std::uint16_t* bin = bd.bin.data() + static_cast<std::size_t>(j) * bd.n;
    for (int i : rows) {
      sc.cnt[bin[i]] += 1;
      sc.sum[bin[i]] += ds.y[i];
    }
    long long nl = 0;
    long long sl = 0;
    for (int k = 0; k < m; ++k) {
      nl += sc.cnt[k];
      sl += sc.sum[k];
      if (nl == 0) continue;
      if (nl == n_node) break;  // this and all later cuts send every row left
      const long long nr = n_node - nl;
      const long long sr = s_node - sl;
      const i128 a = i128(sl) * sl * nr + i128(sr) * sr * nl;
      const i128 b = i128(nl) * nr;
      const i128 diff = a * best_b - best_a * b;
      if (diff > 0) {
        best_a = a;
        best_b = b;
        sc.ties.clear();
        sc.ties.push_back({j, k});
      } else if (diff == 0) {
        sc.ties.push_back({j, k});
      }
    }
  }
  if (sc.ties.empty()) return Candidate{};
  return sc.ties[rng.below(sc.ties.size())];
}

}  // namespace

GrownTree grow_tree_binned(const Dataset& ds, const QuantileGrid& grid, const BinnedData& bd,
                           const TreeParams& params, Rng& rng) {
  const int n = ds.n;
  const int p = ds.p;
  int mtry = params.mtry > 0 ? params.mtry : std::max(1, p / 3);
  if (mtry > p) mtry = p;
  const int a_n = params.a_n > 0 ? params.a_n : n;

  std::vector<int> rows;
  rows.reserve(a_n);
  if (params.with_replacement) {
    for (int i = 0; i < a_n; ++i)
      rows.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
  } else {
    rows = rng.sample(n, a_n);
  }

  Scratch sc;
  int max_cuts = 0;
  for (int j = 0; j < p; ++j) max_cuts = std::max(max_cuts, static_cast<int>(bd.ncuts[j]));
  sc.cnt.resize(max_cuts + 1);
  sc.sum.resize(max_cuts + 1);

  GrownTree tree;
  if (static_cast<int>(rows.size()) < 2) return tree;

  const auto split_node = [&](const std::vector<int>& node_rows) -> std::optional<TreeCut> {
    const std::vector<int> feats = rng.sample(p, mtry);
    const Candidate c = best_split(ds, bd, node_rows, feats, rng, sc);
    if (c.j < 0) return std::nullopt;
    const Cut& cut = grid.cuts[c.j][c.k];
    return TreeCut{c.j, cut.r, cut.value};
  };

  auto root = split_node(rows);
  if (!root) return tree;
  tree.root = *root;

  std::vector<int> left_rows, right_rows;
  {
    const std::uint16_t* bin = bd.bin.data() + static_cast<std::size_t>(root->j) * bd.n;
    const auto& cj = grid.cuts[root->j];
    int k = 0;
    while (cj[k].r != root->r) ++k;
    for (int i : rows)
      (bin[i] <= k ? left_rows : right_rows).push_back(i);
  }

  if (static_cast<int>(left_rows.size()) >= 2) tree.left = split_node(left_rows);
  if (static_cast<int>(right_rows.size()) >= 2) tree.right = split_node(right_rows);
  return tree;
}

}  // namespace detail

GrownTree grow_tree(const Dataset& ds, const QuantileGrid& grid, const TreeParams& params) {
  detail::BinnedData bd = detail::bin_dataset(ds, grid);
  Rng rng(params.seed);
  return detail::grow_tree_binned(ds, grid, bd, params, rng);
}

std::vector<Path> extract_paths(const GrownTree& tree) {
  std::vector<Path> out;
  if (!tree.root) return out;
  const Split rootL{tree.root->j, tree.root->r, Side::L};
  const Split rootR{tree.root->j, tree.root->r, Side::R};
  out.push_back(Path::single(rootL));
  out.push_back(Path::single(rootR));
  if (tree.left) {
    out.push_back(Path::duo(rootL, Split{tree.left->j, tree.left->r, Side::L}));
    out.push_back(Path::duo(rootL, Split{tree.left->j, tree.left->r, Side::R}));
  }
  if (tree.right) {
    out.push_back(Path::duo(rootR, Split{tree.right->j, tree.right->r, Side::L}));
    out.push_back(Path::duo(rootR, Split{tree.right->j, tree.right->r, Side::R}));
  }
  return out;
}

}  // namespace sirus
