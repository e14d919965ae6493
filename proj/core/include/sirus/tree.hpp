#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sirus/dataset.hpp"
#include "sirus/path.hpp"
#include "sirus/quantiles.hpp"
#include "sirus/rng.hpp"

namespace sirus {

struct TreeParams {
  int mtry = 0;      // directions sampled per node; 0 = max(1, floor(p/3))
  int a_n = 0;       // subsample size; 0 = n
  bool with_replacement = true;
  std::uint64_t seed = 0;
};

// A node's chosen cut. Sides belong to paths, not to the node itself.
struct TreeCut {
  int j = 0;
  int r = 0;
  double value = 0.0;
};

// Depth-2 tree: a root cut plus optional cuts of the two child cells.
struct GrownTree {
  std::optional<TreeCut> root;
  std::optional<TreeCut> left;   // splits the region x_root < value
  std::optional<TreeCut> right;  // splits the region x_root >= value
};

// Exact value of the variance-reduction criterion as a reduced fraction.
// Labels are 0/1 so every group sum is an integer and the criterion is
// rational; comparisons between candidates can then be exact.
struct Frac {
  long long num = 0;
  long long den = 1;
};

// Variance-reduction split criterion over the masked node: total within-node
// variance minus the variance left after splitting (between-group share).
// Both children must be non-empty.
double cart_criterion(const std::vector<std::uint8_t>& labels,
                      const std::vector<char>& in_node,
                      const std::vector<char>& go_left);
Frac cart_criterion_exact(const std::vector<std::uint8_t>& labels,
                          const std::vector<char>& in_node,
                          const std::vector<char>& go_left);

// Grow one randomized depth-2 tree: subsample rows, draw mtry features per
// node, take the criterion-maximizing (feature, cut) among candidates that
// split the node's subsample into two non-empty parts; ties are broken
// uniformly with the tree's rng. Zero-gain maxima are accepted. A node with
// no valid candidate stays a leaf.
GrownTree grow_tree(const Dataset& ds, const QuantileGrid& grid, const TreeParams& params);

// The up-to-6 canonical paths of a depth-2 tree: both root sides plus each
// child cut combined with its parent side.
std::vector<Path> extract_paths(const GrownTree& tree);

namespace detail {

// Per-point cut positions: bin[j*n+i] = number of cuts of feature j with
// value <= x_ij. Point i goes left of cut k exactly when bin <= k.
struct BinnedData {
  int n = 0;
  int p = 0;
  std::vector<std::uint16_t> ncuts;
  std::vector<std::uint16_t> bin;
};

BinnedData bin_dataset(const Dataset& ds, const QuantileGrid& grid);

// Core grower over precomputed bins; rng is the tree-local stream.
GrownTree grow_tree_binned(const Dataset& ds, const QuantileGrid& grid,
                           const BinnedData& bd, const TreeParams& params, Rng& rng);

}  // namespace detail

}  // namespace sirus
