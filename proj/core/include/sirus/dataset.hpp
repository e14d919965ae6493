#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sirus/csv.hpp"

namespace sirus {

enum class ColumnKind : std::uint8_t { numeric, categorical };

struct SourceColumn {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
  double median = 0.0;              // numeric: imputation value
  std::vector<std::string> levels;  // categorical: sorted distinct levels
};

// Everything needed to map future raw rows onto the training feature space.
// Applying the same map twice yields identical matrices.
struct PreprocessMap {
  std::string label_column;
  std::string negative_label;  // class 0
  std::string positive_label;  // class 1
  std::vector<SourceColumn> sources;
  std::vector<std::string> feature_names;  // one per expanded feature
};

// Fully numeric training view. Column-major so per-feature scans are contiguous.
// Invariants: all feature values finite; labels in {0,1}; y empty only for
// prediction-time tables without the label column.
struct Dataset {
  int n = 0;
  int p = 0;
  std::vector<double> xcol;  // xcol[j*n + i]
  std::vector<std::uint8_t> y;
  std::vector<std::string> feature_names;

  double x(int i, int j) const { return xcol[static_cast<std::size_t>(j) * n + i]; }
  const double* col(int j) const { return xcol.data() + static_cast<std::size_t>(j) * n; }
  double label_mean() const;
};

// Build the training dataset: median imputation for numeric columns, one dummy
// column per categorical level, labels mapped to {0,1}. positive_class empty
// selects the lexicographically larger label as class 1.
std::pair<Dataset, PreprocessMap> ingest(const RawTable& table, const std::string& label,
                                         const std::string& positive_class = "");

// Map prediction-time rows with the stored medians/levels. Each row holds the
// cells of the source columns in pm.sources order (no label). Unseen
// categorical levels become all-zero dummies; y stays empty.
Dataset apply_preprocess(const PreprocessMap& map,
                         const std::vector<std::vector<std::string>>& rows);

// Row subset (used by cross-validation folds). Keeps column order and names.
Dataset subset_rows(const Dataset& ds, const std::vector<int>& idx);

}  // namespace sirus
