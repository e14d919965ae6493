#include "sirus/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "sirus/errors.hpp"
#include "sirus/rng.hpp"
#include "sirus/rules.hpp"

namespace sirus {

double auc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
  const std::size_t n = scores.size();
  if (labels.size() != n) throw std::invalid_argument("auc: size mismatch");
  long long n1 = 0;
  for (auto v : labels) n1 += v;
  const long long n0 = static_cast<long long>(n) - n1;
  if (n1 == 0 || n0 == 0) throw std::invalid_argument("auc: both classes required");

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return scores[a] < scores[b]; });

  // midranks over tie groups; AUC from the rank-sum of the positive class
  double ranksum1 = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    const double midrank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k)
      if (labels[idx[k]]) ranksum1 += midrank;
    i = j;
  }
  return (ranksum1 - 0.5 * static_cast<double>(n1) * static_cast<double>(n1 + 1)) /
         (static_cast<double>(n1) * static_cast<double>(n0));
}

double dice(const std::vector<Path>& a, const std::vector<Path>& b) {
  std::set<Path> sa(a.begin(), a.end());
  std::set<Path> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 1.0;
  long long inter = 0;
  for (const Path& p : sa) inter += sb.count(p);
  return 2.0 * static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size());
}

std::vector<int> stratified_folds(const std::vector<std::uint8_t>& y, int folds,
                                  std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_folds: folds must be >= 2");
  Rng rng(seed);
  std::vector<int> fold(y.size(), 0);
  for (int cls = 0; cls <= 1; ++cls) {
    std::vector<int> members;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == cls) members.push_back(static_cast<int>(i));
    const int m = static_cast<int>(members.size());
    const std::vector<int> order = rng.sample(m, m);
    for (int k = 0; k < m; ++k) fold[members[order[k]]] = k % folds;
  }
  return fold;
}

namespace {

struct FoldModel {
  std::vector<double> phats;          // descending, aligned with sel
  std::vector<Path> sel;              // selection at the smallest candidate p0
  std::vector<std::uint8_t> marks;    // independence marks over sel
  std::vector<int> marked_in_prefix;  // marked count among the first i entries
  double prevalence = 0.0;
};

// Selection order and marks for one training set, evaluated once; every
// candidate p0 is then a prefix of sel (strictly larger phat) and its
// post-treated set is the marked part of that prefix.
FoldModel fold_model(const Dataset& dtrain, const QuantileGrid& grid, const FrequencyTable& ft,
                     double smallest_p0) {
  FoldModel fm;
  fm.sel = select_paths(ft, smallest_p0);
  fm.marks = independence_marks(fm.sel, dtrain, grid);
  fm.phats.reserve(fm.sel.size());
  for (const Path& p : fm.sel) fm.phats.push_back(ft.phat(p));
  fm.marked_in_prefix.resize(fm.sel.size() + 1, 0);
  for (std::size_t i = 0; i < fm.sel.size(); ++i)
    fm.marked_in_prefix[i + 1] = fm.marked_in_prefix[i] + (fm.marks[i] ? 1 : 0);
  fm.prevalence = dtrain.label_mean();
  return fm;
}

std::size_t prefix_len(const std::vector<double>& phats_desc, double p0) {
  std::size_t len = 0;
  while (len < phats_desc.size() && phats_desc[len] > p0) ++len;
  return len;
}

}  // namespace

CvReport cross_validate(const Dataset& ds, const ForestParams& params, int folds, int reps,
                        std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("cross_validate: folds must be >= 2");
  if (reps < 1) throw std::invalid_argument("cross_validate: reps must be >= 1");

  // Shared candidate thresholds from one full-data forest, kept only where the
  // full-data post-treated rule count lands in 1..25.
  const QuantileGrid grid_full = empirical_quantiles(ds, params.q);
  const ForestResult full = grow_forest(ds, grid_full, params);
  const std::vector<double> g0 = p0_grid(full.table);
  if (g0.empty()) throw DataError("too few distinct path frequencies to form candidates");
  const FoldModel fm_full = fold_model(ds, grid_full, full.table, g0.front());
  std::vector<double> cands;
  for (double p0 : g0) {
    const std::size_t len = prefix_len(fm_full.phats, p0);
    const int sz = fm_full.marked_in_prefix[len];
    if (sz >= 1 && sz <= 25) cands.push_back(p0);
  }
  if (cands.empty()) throw DataError("no candidate p0 yields between 1 and 25 rules");
  const std::size_t nc = cands.size();

  std::vector<std::vector<double>> rep_err(nc);   // per-candidate rep means of 1-AUC
  std::vector<double> size_sum(nc, 0.0);
  std::vector<double> stab_sum(nc, 0.0);

  for (int rep = 0; rep < reps; ++rep) {
    const std::vector<int> fold_of =
        stratified_folds(ds.y, folds, derive_seed(seed, 1000 + static_cast<std::uint64_t>(rep)));

    std::vector<double> auc_acc(nc, 0.0);
    std::vector<int> auc_cnt(nc, 0);
    std::vector<std::vector<std::vector<Path>>> kept(folds,
                                                     std::vector<std::vector<Path>>(nc));

    for (int f = 0; f < folds; ++f) {
      std::vector<int> train_idx, val_idx;
      for (int i = 0; i < ds.n; ++i) (fold_of[i] == f ? val_idx : train_idx).push_back(i);
      if (train_idx.empty() || val_idx.empty()) throw DataError("empty fold");
      const Dataset dtrain = subset_rows(ds, train_idx);
      bool train_has[2] = {false, false};
      for (auto v : dtrain.y) train_has[v] = true;
      if (!train_has[0] || !train_has[1])
        throw DataError("degenerate fold: single-class training part");

      const QuantileGrid grid_f = empirical_quantiles(dtrain, params.q);
      ForestParams pf = params;
      pf.seed = derive_seed(seed, 0x10000ull + static_cast<std::uint64_t>(rep) * folds + f);
      const FrequencyTable tf = grow_forest(dtrain, grid_f, pf).table;
      const FoldModel fm = fold_model(dtrain, grid_f, tf, cands.front());

      // contributions of each marked rule on each validation row, in marked
      // order; candidate scores are then prefix means
      std::vector<Rule> rules;
      for (std::size_t i = 0; i < fm.sel.size(); ++i)
        if (fm.marks[i]) rules.push_back(build_rule(fm.sel[i], dtrain, grid_f, fm.phats[i]));
      const std::size_t nval = val_idx.size();
      std::vector<double> cum(nval * (rules.size() + 1), 0.0);
      std::vector<double> row(ds.p);
      for (std::size_t v = 0; v < nval; ++v) {
        for (int j = 0; j < ds.p; ++j) row[j] = ds.x(val_idx[v], j);
        double s = 0.0;
        for (std::size_t t = 0; t < rules.size(); ++t) {
          s += rule_covers(rules[t], row) ? rules[t].out_inside : rules[t].out_outside;
          cum[v * (rules.size() + 1) + t + 1] = s;
        }
      }
      std::vector<std::uint8_t> val_y(nval);
      bool val_has[2] = {false, false};
      for (std::size_t v = 0; v < nval; ++v) {
        val_y[v] = ds.y[val_idx[v]];
        val_has[val_y[v]] = true;
      }

      std::vector<double> scores(nval);
      for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t len = prefix_len(fm.phats, cands[c]);
        const int nmark = fm.marked_in_prefix[len];
        for (std::size_t i = 0; i < len; ++i)
          if (fm.marks[i]) kept[f][c].push_back(fm.sel[i]);
        if (val_has[0] && val_has[1]) {
          for (std::size_t v = 0; v < nval; ++v)
            scores[v] = nmark > 0 ? cum[v * (rules.size() + 1) + nmark] / nmark
                                  : fm.prevalence;
          auc_acc[c] += 1.0 - auc(scores, val_y);
          auc_cnt[c] += 1;
        }
        size_sum[c] += static_cast<double>(nmark) / (static_cast<double>(folds) * reps);
      }
    }

    for (std::size_t c = 0; c < nc; ++c) {
      if (auc_cnt[c] == 0) throw DataError("no fold had both classes in validation");
      rep_err[c].push_back(auc_acc[c] / auc_cnt[c]);
      double d = 0.0;
      int pairs = 0;
      for (int f1 = 0; f1 < folds; ++f1)
        for (int f2 = f1 + 1; f2 < folds; ++f2) {
          d += dice(kept[f1][c], kept[f2][c]);
          pairs += 1;
        }
      stab_sum[c] += d / pairs / reps;
    }
  }

  CvReport report;
  report.folds = folds;
  report.reps = reps;
  for (std::size_t c = 0; c < nc; ++c) {
    CvRow row;
    row.p0 = cands[c];
    double mean = 0.0;
    for (double e : rep_err[c]) mean += e;
    mean /= reps;
    row.mean_1_auc = mean;
    if (reps > 1) {
      double ss = 0.0;
      for (double e : rep_err[c]) ss += (e - mean) * (e - mean);
      row.sd_mean = std::sqrt(ss / (reps - 1)) / std::sqrt(static_cast<double>(reps));
    }
    row.mean_size = size_sum[c];
    row.mean_stability = stab_sum[c];
    report.rows.push_back(row);
  }
  return report;
}

double tune_p0(const CvReport& report) {
  if (report.rows.empty()) throw std::invalid_argument("tune_p0: empty report");
  const CvRow* best_err = &report.rows[0];
  for (const CvRow& r : report.rows)
    if (r.mean_1_auc < best_err->mean_1_auc) best_err = &r;
  const double cutoff = best_err->mean_1_auc + 2.0 * best_err->sd_mean;
  const CvRow* pick = nullptr;
  for (const CvRow& r : report.rows) {  // ascending p0: later equal-size rows win
    if (r.mean_1_auc > cutoff) continue;
    if (!pick || r.mean_size <= pick->mean_size) pick = &r;
  }
  return pick->p0;
}

std::string to_csv(const CvReport& report) {
  std::string out = "p0,mean_1_auc,sd_mean,mean_size,mean_stability\n";
  char buf[32];
  const auto put = [&](double v, char sep) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
    out.push_back(sep);
  };
  for (const CvRow& r : report.rows) {
    put(r.p0, ',');
    put(r.mean_1_auc, ',');
    put(r.sd_mean, ',');
    put(r.mean_size, ',');
    put(r.mean_stability, '\n');
  }
  return out;
}

}  // namespace sirus
