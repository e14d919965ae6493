#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sirus/dataset.hpp"
#include "sirus/forest.hpp"
#include "sirus/path.hpp"
#include "sirus/quantiles.hpp"

namespace sirus {

struct RuleCondition {
  int j = 0;
  int r = 0;
  double value = 0.0;
  Side side = Side::L;  // L: x < value, R: x >= value
};

// Elementary two-valued rule: the label mean inside the path's hyperrectangle
// vs outside, with empty sides mapped to 0.
struct Rule {
  Path path;
  std::vector<RuleCondition> conds;
  double out_inside = 0.0;
  double out_outside = 0.0;
  long long n_inside = 0;
  double phat = 0.0;
};

struct SirusModel {
  PreprocessMap pre;
  QuantileGrid grid;
  std::vector<Rule> rules;  // descending phat, ties in canonical path order
  double p0 = 0.0;
  long long M = 0;
  std::uint64_t seed = 0;
  double threshold = 0.5;
  double prevalence = 0.0;  // training label mean; output when rules is empty
};

// Paths with phat strictly above p0, sorted by descending phat; ties keep
// canonical path order.
std::vector<Path> select_paths(const FrequencyTable& ft, double p0);

// Greedy dependence filter in list order: mark a path 1 iff its indicator
// vector over the n training points is outside the span of the constant-one
// vector and the indicators already marked. Exact rational elimination, no
// tolerances. The mark of a path never depends on later entries.
std::vector<std::uint8_t> independence_marks(const std::vector<Path>& paths,
                                             const Dataset& ds, const QuantileGrid& grid);

// Keep exactly the marked paths.
std::vector<Path> post_treat(const std::vector<Path>& paths, const Dataset& ds,
                             const QuantileGrid& grid);

Rule build_rule(const Path& path, const Dataset& ds, const QuantileGrid& grid, double freq);

bool rule_covers(const Rule& rule, std::span<const double> row);

// Mean of the rule outputs; the stored prevalence when no rules survived.
double predict_proba(const SirusModel& model, std::span<const double> row);
// 1 iff predict_proba is strictly above the threshold.
int classify(const SirusModel& model, std::span<const double> row);

// One line: "if <feat> < v [& <feat> >= w] then p = ... else p = ...  [freq ...]"
std::string render_rule(const Rule& rule, const std::vector<std::string>& feature_names);

// True when row i of the dataset lies inside the path's hyperrectangle.
bool path_covers_row(const Path& path, const Dataset& ds, const QuantileGrid& grid, int i);

}  // namespace sirus
