#include "sirus/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace sirus {

std::vector<Path> select_paths(const FrequencyTable& ft, double p0) {
  std::vector<std::pair<long long, Path>> picked;
  for (const auto& [path, c] : ft.counts) {
    if (static_cast<double>(c) / static_cast<double>(ft.M) > p0) picked.push_back({c, path});
  }
  // map iteration is already canonical order; stable sort keeps it within ties
  std::stable_sort(picked.begin(), picked.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Path> out;
  out.reserve(picked.size());
  for (auto& [c, path] : picked) out.push_back(path);
  return out;
}

bool path_covers_row(const Path& path, const Dataset& ds, const QuantileGrid& grid, int i) {
  for (int s = 0; s < path.len; ++s) {
    const Split& sp = path.s[s];
    const double v = grid.value_of(sp.j, sp.r);
    const double x = ds.x(i, sp.j);
    if (sp.side == Side::L ? !(x < v) : !(x >= v)) return false;
  }
  return true;
}

Rule build_rule(const Path& path, const Dataset& ds, const QuantileGrid& grid, double freq) {
  Rule rule;
  rule.path = path;
  rule.phat = freq;
  for (int s = 0; s < path.len; ++s) {
    const Split& sp = path.s[s];
    rule.conds.push_back({sp.j, sp.r, grid.value_of(sp.j, sp.r), sp.side});
  }
  long long n_in = 0, s_in = 0, s_out = 0;
  for (int i = 0; i < ds.n; ++i) {
    if (path_covers_row(path, ds, grid, i)) {
      n_in += 1;
      s_in += ds.y[i];
    } else {
      s_out += ds.y[i];
    }
  }
  const long long n_out = ds.n - n_in;
  rule.n_inside = n_in;
  rule.out_inside = n_in > 0 ? static_cast<double>(s_in) / static_cast<double>(n_in) : 0.0;
  rule.out_outside = n_out > 0 ? static_cast<double>(s_out) / static_cast<double>(n_out) : 0.0;
  return rule;
}

bool rule_covers(const Rule& rule, std::span<const double> row) {
  for (const RuleCondition& c : rule.conds) {
    const double x = row[static_cast<std::size_t>(c.j)];
    if (c.side == Side::L ? !(x < c.value) : !(x >= c.value)) return false;
  }
  return true;
}

double predict_proba(const SirusModel& model, std::span<const double> row) {
  if (static_cast<int>(row.size()) != static_cast<int>(model.pre.feature_names.size()))
    throw std::invalid_argument("predict: row has wrong feature dimension");
  if (model.rules.empty()) return model.prevalence;
  double s = 0.0;
  for (const Rule& r : model.rules) s += rule_covers(r, row) ? r.out_inside : r.out_outside;
  return s / static_cast<double>(model.rules.size());
}

int classify(const SirusModel& model, std::span<const double> row) {
  return predict_proba(model, row) > model.threshold ? 1 : 0;
}

std::string render_rule(const Rule& rule, const std::vector<std::string>& feature_names) {
  std::string out = "if ";
  for (std::size_t i = 0; i < rule.conds.size(); ++i) {
    const RuleCondition& c = rule.conds[i];
    if (i) out += " & ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", c.value);
    out += feature_names[static_cast<std::size_t>(c.j)];
    out += c.side == Side::L ? " < " : " >= ";
    out += buf;
  }
  char tail[96];
  std::snprintf(tail, sizeof tail, " then p = %.4f else p = %.4f  [freq %.4f]",
                rule.out_inside, rule.out_outside, rule.phat);
  out += tail;
  return out;
}

}  // namespace sirus
