#include "sirus/forest.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "sirus/rng.hpp"

namespace sirus {

namespace {

// b^e by squaring; keeps dyadic bases exact.
double binpow(double b, long long e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

constexpr long long kSmallM = 4096;

}  // namespace

double binom_cdf(long long k, long long M, double p) {
  if (M < 0 || k < 0 || k > M || !(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("binom_cdf: arguments out of range");
  if (p == 0.0) return 1.0;
  if (p == 1.0) return k == M ? 1.0 : 0.0;
  if (k == M) return 1.0;

  if (M <= kSmallM) {
    // Upward recurrence from (1-p)^M. Multiply and divide separately so that
    // dyadic inputs with small binomial weights stay exact to the last bit.
    const double t0 = binpow(1.0 - p, M);
    if (t0 >= 2.2250738585072014e-308) {
      const double ratio = p / (1.0 - p);
      double t = t0;
      double sum = t0;
      for (long long i = 0; i < k; ++i) {
        t *= static_cast<double>(M - i);
        t /= static_cast<double>(i + 1);
        t *= ratio;
        sum += t;
      }
      return sum < 1.0 ? sum : 1.0;
    }
  }

  // Anchored tail summation in extended precision. Terms shrink moving away
  // from the mode, so each loop keeps full relative accuracy and exits early.
  const long double pl = p;
  const long double lp = logl(pl);
  const long double lq = log1pl(-pl);
  const long double lgM = lgammal(static_cast<long double>(M) + 1);
  const auto log_term = [&](long long i) {
    return lgM - lgammal(static_cast<long double>(i) + 1) -
           lgammal(static_cast<long double>(M - i) + 1) + i * lp + (M - i) * lq;
  };
  long long mode = static_cast<long long>(floorl((M + 1) * pl));
  if (mode > M) mode = M;

  if (k <= mode) {
    long double t = expl(log_term(k));
    if (t == 0.0L) return 0.0;  // every term below is smaller still
    long double sum = 0.0L;
    for (long long i = k; i >= 0; --i) {
      sum += t;
      if (t < sum * 1e-22L) break;
      t *= (static_cast<long double>(i) / static_cast<long double>(M - i + 1)) * (1.0L - pl) / pl;
    }
    const double out = static_cast<double>(sum);
    return out < 1.0 ? out : 1.0;
  }
  long double t = expl(log_term(k + 1));
  if (t == 0.0L) return 1.0;  // upper tail vanishes entirely
  long double tail = 0.0L;
  for (long long i = k + 1; i <= M; ++i) {
    tail += t;
    if (t < tail * 1e-22L) break;
    t *= (static_cast<long double>(M - i) / static_cast<long double>(i + 1)) * pl / (1.0L - pl);
  }
  const double out = static_cast<double>(1.0L - tail);
  return out > 0.0 ? out : 0.0;
}

namespace {

// Occurrence counts with multiplicities; one cdf evaluation per distinct count.
std::map<long long, long long> count_histogram(const FrequencyTable& ft) {
  std::map<long long, long long> mult;
  for (const auto& [path, c] : ft.counts) mult[c] += 1;
  return mult;
}

double epsilon_from_histogram(const std::map<long long, long long>& mult, long long M,
                              double p0) {
  const long long k = static_cast<long long>(std::floor(static_cast<double>(M) * p0));
  double num = 0.0;
  double den = 0.0;
  for (const auto& [c, m] : mult) {
    const double phat = static_cast<double>(c) / static_cast<double>(M);
    const double F = binom_cdf(k, M, phat);
    num += static_cast<double>(m) * F * (1.0 - F);
    den += static_cast<double>(m) * (1.0 - F);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace

double epsilon(const FrequencyTable& ft, double p0) {
  if (ft.M < 1) throw std::invalid_argument("epsilon: empty table");
  return epsilon_from_histogram(count_histogram(ft), ft.M, p0);
}

std::vector<double> p0_grid(const FrequencyTable& ft) {
  if (ft.M < 1) throw std::invalid_argument("p0_grid: empty table");
  std::set<long long> distinct;
  for (const auto& [path, c] : ft.counts) distinct.insert(c);
  // descending counts, top 50 distinct frequencies
  std::vector<long long> top(distinct.rbegin(), distinct.rend());
  if (top.size() > 50) top.resize(50);
  std::vector<double> grid;
  for (std::size_t i = 0; i + 1 < top.size(); ++i) {
    const double hi = static_cast<double>(top[i]) / static_cast<double>(ft.M);
    const double lo = static_cast<double>(top[i + 1]) / static_cast<double>(ft.M);
    grid.push_back(0.5 * (hi + lo));
  }
  std::reverse(grid.begin(), grid.end());
  return grid;
}

bool stopping_satisfied(const FrequencyTable& ft, double alpha) {
  const std::vector<double> grid = p0_grid(ft);
  if (grid.empty()) return false;
  const auto mult = count_histogram(ft);
  double s = 0.0;
  for (double p0 : grid) s += epsilon_from_histogram(mult, ft.M, p0);
  return s / static_cast<double>(grid.size()) < alpha;
}

FrequencyTable merge(FrequencyTable a, const FrequencyTable& b) {
  a.M += b.M;
  for (const auto& [path, c] : b.counts) a.counts[path] += c;
  return a;
}

ForestResult grow_forest(const Dataset& ds, const QuantileGrid& grid, const ForestParams& params) {
  const detail::BinnedData bd = detail::bin_dataset(ds, grid);
  int workers = params.threads > 0 ? params.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;

  ForestResult res;
  long long grown = 0;
  while (grown < params.max_trees) {
    const long long batch = std::min<long long>(params.check_every, params.max_trees - grown);
    const int nw = static_cast<int>(std::min<long long>(workers, batch));
    std::vector<std::map<Path, long long>> partial(nw);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (int w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        auto& mine = partial[w];
        for (long long t = grown + w; t < grown + batch; t += nw) {
          TreeParams tp = params.tree;
          tp.seed = derive_seed(params.seed, static_cast<std::uint64_t>(t));
          Rng rng(tp.seed);
          const GrownTree tree = detail::grow_tree_binned(ds, grid, bd, tp, rng);
          for (const Path& p : extract_paths(tree)) mine[p] += 1;
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& m : partial)
      for (const auto& [path, c] : m) res.table.counts[path] += c;
    grown += batch;
    res.table.M = grown;
    // A non-positive target can never be met (the borderline share is >= 0),
    // so skip the check; callers use alpha = 0 to grow a fixed-size forest.
    if (params.alpha > 0.0 && stopping_satisfied(res.table, params.alpha)) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace sirus
