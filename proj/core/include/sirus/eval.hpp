#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sirus/dataset.hpp"
#include "sirus/forest.hpp"
#include "sirus/path.hpp"

namespace sirus {

// Rank-based AUC with midrank ties: P(s1 > s0) + 0.5 P(s1 = s0) over
// class-1/class-0 pairs. Both classes must be present.
double auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels);

// Dice-Sorensen overlap 2|a & b| / (|a| + |b|); two empty sets give 1.
// Inputs are treated as sets (duplicates ignored).
double dice(const std::vector<Path>& a, const std::vector<Path>& b);

// Two rule lists compared for stability; post_treated records which stage the
// sets were taken from.
struct StabilityPair {
  std::vector<Path> a;
  std::vector<Path> b;
  bool post_treated = false;

  double value() const { return dice(a, b); }
};

struct CvRow {
  double p0 = 0.0;
  double mean_1_auc = 0.0;
  double sd_mean = 0.0;        // stderr of the mean over repetitions
  double mean_size = 0.0;      // post-treated rule count
  double mean_stability = 0.0; // pairwise dice across folds
};

struct CvReport {
  int folds = 0;
  int reps = 0;
  std::vector<CvRow> rows;  // ascending p0
};

// Deterministic stratified fold labels in [0, folds): per class, indices are
// shuffled with the seed and dealt round-robin.
std::vector<int> stratified_folds(const std::vector<std::uint8_t>& y, int folds,
                                  std::uint64_t seed);

// Repeated stratified k-fold evaluation over a shared candidate p0 list taken
// from one full-data forest (midpoint grid, capped at post-treated size 25).
// Per fold: forest on the training part, post-treated rules per candidate,
// validation 1-AUC; stability is dice averaged over fold pairs.
CvReport cross_validate(const Dataset& ds, const ForestParams& params, int folds, int reps,
                        std::uint64_t seed);

// Smallest model within two sd of the best error; ties prefer larger p0.
double tune_p0(const CvReport& report);

// CSV with header p0,mean_1_auc,sd_mean,mean_size,mean_stability.
std::string to_csv(const CvReport& report);

}  // namespace sirus
