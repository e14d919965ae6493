#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sirus/csv.hpp"
#include "sirus/dataset.hpp"
#include "sirus/errors.hpp"
#include "sirus/eval.hpp"
#include "sirus/forest.hpp"
#include "sirus/model_io.hpp"
#include "sirus/quantiles.hpp"
#include "sirus/rules.hpp"

namespace {

struct CommonFlags {
  std::string data;
  std::string label;
  std::string model = "model.json";
  std::string out;
  std::uint64_t seed = 0;
  int threads = 0;
  int q = 10;
  std::string mtry = "auto";
  double alpha = 0.05;
  double p0 = -1.0;  // negative: tune via cross-validation
  long long max_trees = 100000;
  int check_every = 100;
  int a_n = 0;
  bool without_replacement = false;
  int folds = 10;
  int reps = 30;
  double threshold = 0.5;
  std::string positive_class;
};

int parse_mtry(const std::string& s) {
  if (s == "auto") return 0;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1)
    throw CLI::ValidationError("--mtry", "expected 'auto' or a positive integer");
  return v;
}

std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

sirus::ForestParams make_params(const CommonFlags& f) {
  sirus::ForestParams params;
  params.tree.mtry = parse_mtry(f.mtry);
  params.tree.a_n = f.a_n;
  params.tree.with_replacement = !f.without_replacement;
  params.q = f.q;
  params.alpha = f.alpha;
  params.check_every = f.check_every;
  params.max_trees = f.max_trees;
  params.threads = f.threads;
  params.seed = f.seed;
  return params;
}

void print_rules(const sirus::SirusModel& model, std::ostream& os) {
  char head[96];
  std::snprintf(head, sizeof head, "average %s rate: %.4f", model.pre.positive_label.c_str(),
                model.prevalence);
  os << head << "\n";
  if (model.rules.empty()) {
    os << "no rules survived selection; the model predicts the average rate\n";
    return;
  }
  for (const sirus::Rule& r : model.rules)
    os << sirus::render_rule(r, model.pre.feature_names) << "\n";
}

int cmd_fit(const CommonFlags& f) {
  const sirus::RawTable table = sirus::read_csv_file(f.data);
  auto [ds, pre] = sirus::ingest(table, f.label, f.positive_class);
  const sirus::QuantileGrid grid = sirus::empirical_quantiles(ds, f.q);
  const sirus::ForestParams params = make_params(f);

  double p0 = f.p0;
  if (p0 < 0.0) {
    const sirus::CvReport report = sirus::cross_validate(ds, params, f.folds, f.reps, f.seed);
    p0 = sirus::tune_p0(report);
    std::cout << "tuned p0: " << fmt_double(p0) << "\n";
  }

  const sirus::ForestResult forest = sirus::grow_forest(ds, grid, params);
  if (!forest.converged)
    std::cerr << "warning: tree cap reached before the stability criterion was met\n";

  const std::vector<sirus::Path> kept =
      sirus::post_treat(sirus::select_paths(forest.table, p0), ds, grid);

  sirus::SirusModel model;
  model.pre = std::move(pre);
  model.grid = grid;
  for (const sirus::Path& path : kept)
    model.rules.push_back(sirus::build_rule(path, ds, grid, forest.table.phat(path)));
  model.p0 = p0;
  model.M = forest.table.M;
  model.seed = f.seed;
  model.threshold = f.threshold;
  model.prevalence = ds.label_mean();

  sirus::save_model(model, f.model);
  std::cout << "trees: " << model.M << "\n";
  std::cout << "p0: " << fmt_double(model.p0) << "\n";
  std::cout << "rules: " << model.rules.size() << "\n";
  print_rules(model, std::cout);
  return 0;
}

int cmd_predict(const CommonFlags& f) {
  const sirus::SirusModel model = sirus::load_model(f.model);
  const sirus::RawTable table = sirus::read_csv_file(f.data);

  // match training columns by name; a label column in the input is ignored
  std::vector<int> src_col;
  for (const sirus::SourceColumn& sc : model.pre.sources) {
    const int j = table.find_column(sc.name);
    if (j < 0) throw sirus::DataError("input is missing column " + sc.name);
    src_col.push_back(j);
  }
  std::vector<std::vector<std::string>> rows(table.nrow());
  for (int i = 0; i < table.nrow(); ++i)
    for (int j : src_col) rows[i].push_back(table.rows[i][j]);
  const sirus::Dataset ds = sirus::apply_preprocess(model.pre, rows);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!f.out.empty()) {
    file.open(f.out, std::ios::binary);
    if (!file) throw sirus::DataError("cannot write " + f.out);
    os = &file;
  }
  *os << "proba,class\n";
  std::vector<double> row(ds.p);
  for (int i = 0; i < ds.n; ++i) {
    for (int j = 0; j < ds.p; ++j) row[j] = ds.x(i, j);
    const double proba = sirus::predict_proba(model, row);
    *os << fmt_double(proba) << ',' << sirus::classify(model, row) << "\n";
  }
  if (!f.out.empty() && !*os) throw sirus::DataError("write failed: " + f.out);
  return 0;
}

int cmd_cv(const CommonFlags& f) {
  const sirus::RawTable table = sirus::read_csv_file(f.data);
  auto [ds, pre] = sirus::ingest(table, f.label, f.positive_class);
  (void)pre;
  const sirus::ForestParams params = make_params(f);
  const sirus::CvReport report = sirus::cross_validate(ds, params, f.folds, f.reps, f.seed);

  const std::string out_path = f.out.empty() ? "cv_report.csv" : f.out;
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw sirus::DataError("cannot write " + out_path);
  file << sirus::to_csv(report);
  if (!file) throw sirus::DataError("write failed: " + out_path);

  std::cout << "p0: " << fmt_double(sirus::tune_p0(report)) << "\n";
  return 0;
}

int cmd_print(const CommonFlags& f) {
  const sirus::SirusModel model = sirus::load_model(f.model);
  print_rules(model, std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sirus: stable rule extraction for binary classification"};
  app.require_subcommand(1);
  CommonFlags f;

  const auto add_data_flags = [&](CLI::App* cmd) {
    cmd->add_option("--data", f.data, "input CSV with a header row")->required();
    cmd->add_option("--label", f.label, "name of the label column")->required();
    cmd->add_option("--positive-class", f.positive_class,
                    "label value treated as class 1 (default: lexicographically larger)");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
    cmd->add_option("--q", f.q, "quantiles per feature");
    cmd->add_option("--mtry", f.mtry, "features tried per node, or 'auto' for p/3");
    cmd->add_option("--alpha", f.alpha, "stability stopping target");
    cmd->add_option("--max-trees", f.max_trees, "hard tree cap");
    cmd->add_option("--check-every", f.check_every, "trees between stopping checks");
    cmd->add_option("--a-n", f.a_n, "subsample size per tree (0 = n)");
    cmd->add_flag("--without-replacement", f.without_replacement,
                  "subsample without replacement");
  };

  CLI::App* fit = app.add_subcommand("fit", "train a model and write it to --model");
  add_data_flags(fit);
  fit->add_option("--model", f.model, "output model path");
  fit->add_option("--p0", f.p0, "path frequency threshold; omit to tune by cross-validation");
  fit->add_option("--folds", f.folds, "folds for tuning");
  fit->add_option("--reps", f.reps, "repetitions for tuning");
  fit->add_option("--threshold", f.threshold, "decision threshold on the probability");

  CLI::App* predict = app.add_subcommand("predict", "score a CSV with a fitted model");
  predict->add_option("--model", f.model, "model path")->required();
  predict->add_option("--data", f.data, "input CSV")->required();
  predict->add_option("--out", f.out, "output CSV path (default: stdout)");

  CLI::App* cv = app.add_subcommand("cv", "cross-validate candidate p0 values");
  add_data_flags(cv);
  cv->add_option("--out", f.out, "report CSV path (default: cv_report.csv)");
  cv->add_option("--folds", f.folds, "cross-validation folds");
  cv->add_option("--reps", f.reps, "repetitions");

  CLI::App* print = app.add_subcommand("print-rules", "render a fitted model's rules");
  print->add_option("--model", f.model, "model path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(fit)) return cmd_fit(f);
    if (app.got_subcommand(predict)) return cmd_predict(f);
    if (app.got_subcommand(cv)) return cmd_cv(f);
    if (app.got_subcommand(print)) return cmd_print(f);
    return 2;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sirus::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
