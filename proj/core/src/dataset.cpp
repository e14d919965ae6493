#include "sirus/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "sirus/csv.hpp"
#include "sirus/errors.hpp"

namespace sirus {

namespace {

double median_of(std::vector<double> v) {
  // median of observed values; caller guarantees v nonempty
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double Dataset::label_mean() const {
  if (y.empty()) return 0.0;
  long long s = 0;
  for (auto v : y) s += v;
  return static_cast<double>(s) / static_cast<double>(y.size());
}

std::pair<Dataset, PreprocessMap> ingest(const RawTable& table, const std::string& label,
                                         const std::string& positive_class) {
  const int label_j = table.find_column(label);
  if (label_j < 0) throw DataError("label column not found: " + label);
  const int ncol = table.ncol();
  const int nrow = table.nrow();
  if (nrow == 0) throw DataError("no data rows");

  PreprocessMap pm;
  pm.label_column = label;

  // Distinct label values; binary required.
  std::set<std::string> label_values;
  for (const auto& row : table.rows) {
    if (cell_missing(row[label_j]))
      throw DataError("missing value in label column " + label);
    label_values.insert(row[label_j]);
  }
  if (label_values.size() != 2)
    throw DataError("label column " + label + " has " +
                    std::to_string(label_values.size()) + " distinct values, need 2");
  const std::string lo = *label_values.begin();
  const std::string hi = *std::next(label_values.begin());
  if (positive_class.empty()) {
    pm.positive_label = hi;  // lexicographically larger value is the positive class
    pm.negative_label = lo;
  } else {
    if (!label_values.count(positive_class))
      throw DataError("positive class '" + positive_class + "' not present in " + label);
    pm.positive_label = positive_class;
    pm.negative_label = positive_class == lo ? hi : lo;
  }

  // Classify feature columns: numeric if every observed cell parses as a number.
  for (int j = 0; j < ncol; ++j) {
    if (j == label_j) continue;
    SourceColumn sc;
    sc.name = table.columns[j];
    bool all_numeric = true;
    std::vector<double> observed;
    for (const auto& row : table.rows) {
      if (cell_missing(row[j])) continue;
      double v;
      if (!parse_number(row[j], v)) {
        all_numeric = false;
        break;
      }
      observed.push_back(v);
    }
    if (all_numeric && !observed.empty()) {
      sc.kind = ColumnKind::numeric;
      sc.median = median_of(std::move(observed));
    } else {
      sc.kind = ColumnKind::categorical;
      std::set<std::string> levels;
      for (const auto& row : table.rows)
        if (!cell_missing(row[j])) levels.insert(row[j]);
      if (levels.empty())
        throw DataError("column " + sc.name + " has no observed values");
      sc.levels.assign(levels.begin(), levels.end());
    }
    pm.sources.push_back(std::move(sc));
  }
  if (pm.sources.empty()) throw DataError("no feature columns besides the label");

  for (const auto& sc : pm.sources) {
    if (sc.kind == ColumnKind::numeric) {
      pm.feature_names.push_back(sc.name);
    } else {
      for (const auto& lv : sc.levels) pm.feature_names.push_back(sc.name + "=" + lv);
    }
  }

  // Strip the label column and encode the rest.
  std::vector<std::vector<std::string>> feat_rows(nrow);
  for (int i = 0; i < nrow; ++i) {
    feat_rows[i].reserve(ncol - 1);
    for (int j = 0; j < ncol; ++j)
      if (j != label_j) feat_rows[i].push_back(table.rows[i][j]);
  }
  Dataset ds = apply_preprocess(pm, feat_rows);

  ds.y.resize(nrow);
  for (int i = 0; i < nrow; ++i)
    ds.y[i] = table.rows[i][label_j] == pm.positive_label ? 1 : 0;
  return {std::move(ds), std::move(pm)};
}

Dataset apply_preprocess(const PreprocessMap& pm, const std::vector<std::vector<std::string>>& rows) {
  Dataset ds;
  ds.n = static_cast<int>(rows.size());
  ds.p = static_cast<int>(pm.feature_names.size());
  ds.feature_names = pm.feature_names;
  ds.xcol.assign(static_cast<std::size_t>(ds.n) * ds.p, 0.0);

  const std::size_t nsrc = pm.sources.size();
  for (int i = 0; i < ds.n; ++i) {
    if (rows[i].size() != nsrc)
      throw DataError("row " + std::to_string(i + 1) + ": expected " + std::to_string(nsrc) +
                      " feature cells, got " + std::to_string(rows[i].size()));
    int j = 0;
    for (std::size_t s = 0; s < nsrc; ++s) {
      const SourceColumn& sc = pm.sources[s];
      const std::string& cell = rows[i][s];
      if (sc.kind == ColumnKind::numeric) {
        double v;
        if (cell_missing(cell)) {
          v = sc.median;  // impute with the training median
        } else if (!parse_number(cell, v)) {
          throw DataError("row " + std::to_string(i + 1) + ", column " + sc.name +
                          ": not a number: '" + cell + "'");
        }
        ds.xcol[static_cast<std::size_t>(j) * ds.n + i] = v;
        ++j;
      } else {
        // One dummy per training level; missing or unseen values leave all zeros.
        int hit = -1;
        if (!cell_missing(cell)) {
          auto it = std::lower_bound(sc.levels.begin(), sc.levels.end(), cell);
          if (it != sc.levels.end() && *it == cell)
            hit = static_cast<int>(it - sc.levels.begin());
        }
        for (int k = 0; k < static_cast<int>(sc.levels.size()); ++k) {
          ds.xcol[static_cast<std::size_t>(j) * ds.n + i] = k == hit ? 1.0 : 0.0;
          ++j;
        }
      }
    }
  }
  return ds;
}

Dataset subset_rows(const Dataset& ds, const std::vector<int>& idx) {
  Dataset out;
  out.n = static_cast<int>(idx.size());
  out.p = ds.p;
  out.feature_names = ds.feature_names;
  out.xcol.resize(static_cast<std::size_t>(out.n) * out.p);
  for (int j = 0; j < ds.p; ++j) {
    const double* src = ds.col(j);
    double* dst = out.xcol.data() + static_cast<std::size_t>(j) * out.n;
    for (int i = 0; i < out.n; ++i) dst[i] = src[idx[i]];
  }
  if (!ds.y.empty()) {
    out.y.resize(out.n);
    for (int i = 0; i < out.n; ++i) out.y[i] = ds.y[idx[i]];
  }
  return out;
}

}  // namespace sirus
