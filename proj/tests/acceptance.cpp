// Acceptance checks. Each check prints one [PASS]/[FAIL] line with a short
// detail; the exit status is the number of failed checks.

#include <sys/wait.h>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sirus/csv.hpp"
#include "sirus/dataset.hpp"
#include "sirus/errors.hpp"
#include "sirus/eval.hpp"
#include "sirus/forest.hpp"
#include "sirus/model_io.hpp"
#include "sirus/path.hpp"
#include "sirus/quantiles.hpp"
#include "sirus/rng.hpp"
#include "sirus/rules.hpp"
#include "sirus/tree.hpp"
#include "synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;
using sirus::Path;
using sirus::Side;

int g_failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------- C1

// Number of distinct root-to-leaf split sequences of length 1 or 2 over p
// features with q-1 cuts each. Sequences are ordered; across two features
// every side pattern occurs, while on a shared feature the left-then-right
// pattern contradicts itself and is excluded, leaving three patterns for
// every ordered cut pair (equal cuts included).
long long count_paths(int p, int q) {
  long long count = 0;
  for (int j = 0; j < p; ++j)
    for (int r = 1; r < q; ++r) count += 2;
  for (int j1 = 0; j1 < p; ++j1)
    for (int r1 = 1; r1 < q; ++r1)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int j2 = 0; j2 < p; ++j2)
          for (int r2 = 1; r2 < q; ++r2)
            for (int s2 = 0; s2 < 2; ++s2) {
              const bool left_then_right = s1 == 0 && s2 == 1;
              if (j1 != j2 || !left_then_right) ++count;
            }
  return count;
}

void check_c1() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream out;
  const int ps[] = {1, 2, 3};
  const int qs[] = {3, 4, 3};
  for (int i = 0; i < 3; ++i) {
    const long long p = ps[i], q = qs[i];
    const long long expect = 2 * p * (q - 1) + p * (4 * p - 1) * (q - 1) * (q - 1);
    const long long got = count_paths(ps[i], qs[i]);
    if (got != expect) ok = false;
    out << "(p=" << p << ",q=" << q << ")=" << got << " ";
  }
  const long long big = count_paths(2, 10);
  if (big != 1170) ok = false;
  double secs = seconds_since(t0);
  if (secs >= 1.0) ok = false;
  out << "(p=2,q=10)=" << big << " in " << secs << " s";
  report("C1 path-space cardinality", ok, out.str());
}

// ---------------------------------------------------------------- C2

// Independent oracle: population variance of the node labels minus the
// count-weighted child variances.
double criterion_oracle(const std::vector<std::uint8_t>& y, const std::vector<char>& in_node,
                        const std::vector<char>& go_left) {
  std::vector<double> node, left, right;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!in_node[i]) continue;
    node.push_back(y[i]);
    (go_left[i] ? left : right).push_back(y[i]);
  }
  auto var = [](const std::vector<double>& v) {
    double mu = 0.0;
    for (double x : v) mu += x;
    mu /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mu) * (x - mu);
    return s / static_cast<double>(v.size());
  };
  const double nn = static_cast<double>(node.size());
  const double wl = static_cast<double>(left.size()) / nn;
  const double wr = static_cast<double>(right.size()) / nn;
  return var(node) - wl * var(left) - wr * var(right);
}

void check_c2() {
  std::mt19937_64 gen(12021);
  bool ok = true;
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 2 + static_cast<int>(gen() % 15);
    std::vector<std::uint8_t> y(n);
    std::vector<char> in_node(n, 0), go_left(n, 0);
    for (int i = 0; i < n; ++i) y[i] = static_cast<std::uint8_t>(gen() % 2);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::shuffle(idx.begin(), idx.end(), gen);
    const int m = 2 + (n > 2 ? static_cast<int>(gen() % (n - 1)) : 0);  // node size
    const int nl = 1 + static_cast<int>(gen() % (m - 1));               // left size
    for (int t = 0; t < m; ++t) in_node[static_cast<std::size_t>(idx[t])] = 1;
    for (int t = 0; t < nl; ++t) go_left[static_cast<std::size_t>(idx[t])] = 1;
    for (int t = m; t < n; ++t)  // rows outside the node must be ignored
      go_left[static_cast<std::size_t>(idx[t])] = static_cast<char>(gen() % 2);
    const double got = sirus::cart_criterion(y, in_node, go_left);
    const double want = criterion_oracle(y, in_node, go_left);
    worst = std::max(worst, std::abs(got - want));
  }
  if (worst > 1e-12) ok = false;

  std::vector<std::uint8_t> y = {0, 0, 1, 1};
  std::vector<char> all(4, 1), left = {1, 0, 0, 0};
  sirus::Frac f = sirus::cart_criterion_exact(y, all, left);
  const bool frac_ok = f.num == 1 && f.den == 12;
  if (!frac_ok) ok = false;
  std::ostringstream out;
  out << "1000 instances, max |diff| = " << worst << "; worked example = " << f.num << "/"
      << f.den;
  report("C2 split criterion vs variance oracle", ok, out.str());
}

// ---------------------------------------------------------------- C3

using rational = boost::multiprecision::cpp_rational;

rational binom_cdf_exact(long long k, long long M, double p) {
  const rational rp(p);  // exact value of the double
  const rational rq = 1 - rp;
  rational coeff = 1, sum = 0;
  for (long long i = 0; i <= k; ++i) {
    rational term = coeff;
    for (long long t = 0; t < i; ++t) term *= rp;
    for (long long t = 0; t < M - i; ++t) term *= rq;
    sum += term;
    coeff = coeff * (M - i) / (i + 1);
  }
  return sum;
}

void check_c3() {
  bool ok = true;
  double worst = 0.0;
  const double probs[] = {0.0625, 0.1, 0.25, 0.3, 0.5, 0.7, 0.875, 0.9};
  for (long long M = 1; M <= 20; ++M)
    for (long long k = 0; k <= M; ++k)
      for (double p : probs) {
        const double got = sirus::binom_cdf(k, M, p);
        const double want = static_cast<double>(binom_cdf_exact(k, M, p));
        worst = std::max(worst, std::abs(got - want));
      }
  if (worst > 1e-12) ok = false;
  const double dyadic = sirus::binom_cdf(3, 10, 0.5);
  if (dyadic != 0.171875) ok = false;
  std::ostringstream out;
  out << "max |diff| over M<=20 = " << worst << "; F(3;10,1/2) = " << dyadic;
  report("C3 binomial cdf vs rational enumeration", ok, out.str());
}

// ---------------------------------------------------------------- C4

sirus::Dataset additive_dataset(int n, int p, std::uint64_t seed) {
  sirus::Rng rng(seed);
  sirus::Dataset ds;
  ds.n = n;
  ds.p = p;
  ds.xcol.resize(static_cast<std::size_t>(n) * p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i)
      ds.xcol[static_cast<std::size_t>(j) * n + i] =
          static_cast<double>(rng.below(100000)) / 100000.0;
  ds.y.resize(n);
  for (int i = 0; i < n; ++i) {
    const unsigned pct = 10 + (ds.x(i, 0) >= 0.5 ? 40 : 0) + (ds.x(i, 1) >= 0.5 ? 30 : 0);
    ds.y[i] = rng.below(100) < pct ? 1 : 0;
  }
  for (int j = 0; j < p; ++j) ds.feature_names.push_back("x" + std::to_string(j));
  return ds;
}

bool refit_stability(const sirus::Dataset& ds, std::uint64_t seed, double* out_dice,
                     long long* out_m, double* out_secs) {
  auto t0 = Clock::now();
  auto grid = sirus::empirical_quantiles(ds, 10);
  sirus::ForestParams fp;
  fp.seed = seed;
  auto first = sirus::grow_forest(ds, grid, fp);
  *out_m = first.table.M;
  *out_secs = seconds_since(t0);
  if (!first.converged) return false;
  auto thresholds = sirus::p0_grid(first.table);
  if (thresholds.empty()) return false;

  sirus::ForestParams fixed = fp;
  fixed.alpha = 0.0;  // the mean borderline share is never negative
  fixed.max_trees = first.table.M;
  fixed.seed = seed + 7717;
  auto ra = sirus::grow_forest(ds, grid, fixed);
  fixed.seed = seed + 9191;
  auto rb = sirus::grow_forest(ds, grid, fixed);
  if (ra.table.M != first.table.M || rb.table.M != first.table.M) return false;

  double acc = 0.0;
  for (double v : thresholds)
    acc += sirus::dice(sirus::select_paths(ra.table, v), sirus::select_paths(rb.table, v));
  *out_dice = acc / static_cast<double>(thresholds.size());
  *out_secs = seconds_since(t0);
  return true;
}

void check_c4() {
  std::vector<sirus::Dataset> sets;
  sets.push_back(testsupport::informative(500, 10, 101));
  sets.push_back(testsupport::informative(500, 10, 202, 7, 3));
  sets.push_back(additive_dataset(500, 10, 303));
  bool ok = true;
  std::ostringstream out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    double s = 0.0, secs = 0.0;
    long long m = 0;
    bool ran = refit_stability(sets[i], 5000 + 17 * i, &s, &m, &secs);
    const bool in_range = ran && s >= 0.90 && s <= 0.99 && secs < 300.0;
    if (!in_range) ok = false;
    out << "set" << (i + 1) << ": S=" << s << " at M=" << m << " (" << secs << " s"
        << (ran ? "" : ", no convergence") << ")  ";
  }
  report("C4 refit stability at the chosen forest size", ok, out.str());
}

// ---------------------------------------------------------------- C5

void check_c5() {
  auto t0 = Clock::now();
  int hits = 0;
  double one_minus_auc = 1.0;
  for (int run = 0; run < 100; ++run) {
    sirus::Dataset ds = testsupport::informative(1000, 5, 7000 + run);
    auto grid = sirus::empirical_quantiles(ds, 10);
    sirus::ForestParams fp;
    fp.seed = static_cast<std::uint64_t>(run);
    fp.max_trees = 5000;
    auto fr = sirus::grow_forest(ds, grid, fp);
    auto sel = sirus::select_paths(fr.table, 0.1);
    auto kept = sirus::post_treat(sel, ds, grid);
    const bool hit = !kept.empty() && kept[0].len == 1 && kept[0].s[0].j == 0 &&
                     kept[0].s[0].r == 5;
    hits += hit;

    if (run == 0) {
      sirus::SirusModel m;
      m.pre.feature_names = ds.feature_names;
      m.grid = grid;
      m.prevalence = ds.label_mean();
      for (const auto& p : kept)
        m.rules.push_back(sirus::build_rule(p, ds, grid, fr.table.phat(p)));
      sirus::Dataset held = testsupport::informative(2000, 5, 99777);
      std::vector<double> scores(static_cast<std::size_t>(held.n));
      std::vector<double> row(5);
      for (int i = 0; i < held.n; ++i) {
        for (int j = 0; j < 5; ++j) row[static_cast<std::size_t>(j)] = held.x(i, j);
        scores[static_cast<std::size_t>(i)] = sirus::predict_proba(m, row);
      }
      one_minus_auc = 1.0 - sirus::auc(scores, held.y);
    }
  }
  const bool ok = hits >= 95 && one_minus_auc < 0.15;
  std::ostringstream out;
  out << hits << "/100 runs recover the planted split; held-out 1-AUC = " << one_minus_auc
      << " (" << seconds_since(t0) << " s)";
  report("C5 planted-rule recovery", ok, out.str());
}

// ---------------------------------------------------------------- C6

void check_c6() {
  sirus::Dataset ds;
  ds.n = 4;
  ds.p = 2;
  ds.xcol = {1, 3, 1, 5, 5, 5, 15, 15};
  ds.y = {0, 1, 0, 1};
  ds.feature_names = {"x0", "x1"};
  sirus::QuantileGrid grid;
  grid.q = 10;
  grid.cuts = {{{5, 2.0}, {7, 4.0}}, {{4, 10.0}}};

  const Path P1 = Path::single({0, 5, Side::L});
  const Path P2 = Path::single({0, 5, Side::R});
  const Path P3 = Path::single({0, 7, Side::L});
  const Path P4 = Path::single({1, 4, Side::L});
  const Path P5 = Path::duo({0, 5, Side::L}, {1, 4, Side::R});
  const Path P6 = Path::single({0, 7, Side::R});

  auto kept = sirus::post_treat({P1, P2, P4, P5, P3, P6}, ds, grid);
  const bool ok = kept.size() == 3 && kept[0] == P1 && kept[1] == P4 && kept[2] == P5;
  std::ostringstream out;
  out << "kept " << kept.size() << " of 6 candidates";
  report("C6 dependence filter on the worked ordering", ok, out.str());
}

// ---------------------------------------------------------------- C7

void check_c7() {
  const Path a = Path::single({0, 1, Side::L});
  const Path b = Path::single({1, 2, Side::R});
  const bool ok = sirus::dice({}, {}) == 1.0 && sirus::dice({a, b}, {a, b}) == 1.0 &&
                  sirus::dice({a}, {b}) == 0.0;
  report("C7 overlap-index conventions", ok,
         "dice(empty,empty)=1, dice(A,A)=1, disjoint=0");
}

// ---------------------------------------------------------------- C8

void check_c8() {
  std::string path;
  if (const char* env = std::getenv("SIRUS_HABERMAN"))
    path = env;
  else
    path = std::string(SIRUS_SOURCE_DIR) + "/data/haberman/haberman.data";
  std::ifstream in(path);
  if (!in) {
    report("C8 survival-data benchmark", false,
           "dataset file not found at " + path +
               " (no network in this environment; run scripts/fetch_haberman.sh or set "
               "SIRUS_HABERMAN)");
    return;
  }
  auto t0 = Clock::now();
  sirus::RawTable t;
  t.columns = {"age", "op_year", "pos_nodes", "survival"};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) fields.push_back(cell);
    if (fields.size() != 4) {
      report("C8 survival-data benchmark", false, "malformed row in " + path);
      return;
    }
    t.rows.push_back(fields);
  }

  try {
    auto [ds, pre] = sirus::ingest(t, "survival");  // class 1 = label "2"
    sirus::ForestParams fp;
    fp.max_trees = 25000;
    auto rep = sirus::cross_validate(ds, fp, 10, 10, 2024);
    const double tuned = sirus::tune_p0(rep);
    const sirus::CvRow* row = nullptr;
    for (const auto& r : rep.rows)
      if (r.p0 == tuned) row = &r;
    if (!row) {
      report("C8 survival-data benchmark", false, "tuned threshold missing from the report");
      return;
    }
    const bool ok = std::abs(row->mean_1_auc - 0.36) <= 0.05 &&
                    std::abs(row->mean_stability - 0.65) <= 0.15 &&
                    std::abs(row->mean_size - 3.3) <= 2.0;
    std::ostringstream out;
    out << "n=" << ds.n << ", tuned p0=" << tuned << ": 1-AUC=" << row->mean_1_auc
        << " (target 0.36+-0.05), stability=" << row->mean_stability
        << " (target 0.65+-0.15), rules=" << row->mean_size << " (target 3.3+-2) in "
        << seconds_since(t0) << " s";
    report("C8 survival-data benchmark", ok, out.str());
  } catch (const std::exception& e) {
    report("C8 survival-data benchmark", false, std::string("error: ") + e.what());
  }
}

// ---------------------------------------------------------------- C9

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool run_cmd(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  return rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
}

void write_csv(const std::string& path, int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::ofstream out(path);
  out << "a,b,c,label\n";
  for (int i = 0; i < n; ++i) {
    const double a = unif(gen), b = unif(gen), c = unif(gen);
    const bool pos = unif(gen) < (a >= 0.5 ? 0.85 : 0.15);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.9f,%.9f,%.9f,%s\n", a, b, c, pos ? "yes" : "no");
    out << buf;
  }
}

void check_c9() {
  auto t0 = Clock::now();
  namespace fs = std::filesystem;
  const std::string dir = "/tmp/sirus_acceptance_cli";
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
  write_csv(dir + "/train.csv", 300, 11);
  write_csv(dir + "/test.csv", 120, 22);

  const std::string cli = SIRUS_CLI_PATH;
  const std::string base = "cd " + dir + " && " + cli;
  auto fit = [&](const char* model, int threads, const char* log) {
    std::ostringstream c;
    c << base << " fit --data train.csv --label label --p0 0.07 --max-trees 400 --seed 5"
      << " --threads " << threads << " --model " << model << " > " << log << " 2>/dev/null";
    return run_cmd(c.str());
  };

  bool ok = fit("m1.json", 1, "fit1.out") && fit("m8.json", 8, "fit8.out") &&
            fit("m1b.json", 1, "fit1b.out");
  ok = ok && run_cmd(base + " predict --model m1.json --data test.csv --out p1.csv > /dev/null") &&
       run_cmd(base + " predict --model m8.json --data test.csv --out p8.csv > /dev/null") &&
       run_cmd(base + " print-rules --model m1.json > pr1.out") &&
       run_cmd(base + " print-rules --model m8.json > pr8.out");
  auto cv = [&](const char* outfile, int threads) {
    std::ostringstream c;
    c << base << " cv --data train.csv --label label --folds 3 --reps 2 --max-trees 300"
      << " --seed 5 --threads " << threads << " --out " << outfile << " > /dev/null";
    return run_cmd(c.str());
  };
  ok = ok && cv("cv1.csv", 1) && cv("cv8.csv", 8);

  std::string mismatch;
  auto same = [&](const char* x, const char* y) {
    const std::string a = slurp(dir + "/" + x), b = slurp(dir + "/" + y);
    const bool eq = !a.empty() && a == b;
    if (!eq && mismatch.empty()) mismatch = std::string(x) + " vs " + y;
    return eq;
  };
  if (ok) {
    ok = same("m1.json", "m8.json") && same("m1.json", "m1b.json") &&
         same("fit1.out", "fit8.out") && same("p1.csv", "p8.csv") &&
         same("pr1.out", "pr8.out") && same("cv1.csv", "cv8.csv");
  } else {
    mismatch = "a command exited nonzero";
  }
  std::ostringstream out;
  out << "fit/predict/cv/print-rules byte-identical across 1 and 8 threads and reruns";
  if (!ok) out << " -- FAILED at " << mismatch;
  out << " (" << seconds_since(t0) << " s)";
  report("C9 command-line determinism", ok, out.str());
}

}  // namespace

int main() {
  check_c1();
  check_c2();
  check_c3();
  check_c4();
  check_c5();
  check_c6();
  check_c7();
  check_c8();
  check_c9();
  if (g_failures == 0) std::printf("all acceptance checks passed\n");
  return g_failures;
}
