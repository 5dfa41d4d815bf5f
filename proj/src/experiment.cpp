#include "experiment.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <numeric>
#include <cmath>
#include <numbers>
#include <thread>

namespace permlab {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t stream_id(std::uint64_t master_seed, std::uint64_t n) {
  return mix64(mix64(master_seed) ^ (n * 0xD1B54A32D192ED03ull));
}

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t index) {
  return mix64(stream_id(master_seed, n) ^ mix64(index ^ 0x632BE59BD9B4E019ull));
}

std::uint64_t bounded(Rng& rng, std::uint64_t range) {
  std::uint64_t x = rng();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      x = rng();
      m = static_cast<unsigned __int128>(x) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

Permutation random_permutation(std::size_t n, Rng& rng) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded(rng, i));
    std::swap(v[i - 1], v[j]);
  }
  return Permutation::from_unchecked(std::move(v));
}

std::vector<std::size_t> default_ladder(std::size_t base) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 8; ++k) out.push_back(base << k);
  return out;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.lengths.empty()) throw InvalidInput("experiment: no lengths given");
  for (std::size_t i = 0; i < cfg.lengths.size(); ++i) {
    if (cfg.lengths[i] == 0) throw InvalidInput("experiment: lengths must be positive");
    if (i > 0 && cfg.lengths[i] <= cfg.lengths[i - 1]) {
      throw InvalidInput("experiment: lengths must be strictly increasing");
    }
  }
  if (cfg.samples_per_length < 2) throw InvalidInput("experiment: at least 2 samples per length are required");
}

double c_estimate(double mean, std::size_t n) {
  const double r = mean / (2.0 * std::sqrt(static_cast<double>(n)));
  return r * r;
}

namespace {

template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const unsigned extra = threads > 1 ? static_cast<unsigned>(std::min<std::size_t>(threads, count)) - 1 : 0;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < extra; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

SampleStats run_rung(const Solver& solver, const ExperimentConfig& cfg, std::size_t n) {
  SampleStats st;
  st.n = n;
  st.samples = cfg.samples_per_length;
  st.master_seed = cfg.master_seed;
  st.stream_id = stream_id(cfg.master_seed, n);
  st.lengths.assign(cfg.samples_per_length, 0);

  const auto start = std::chrono::steady_clock::now();
  std::atomic<bool> failed{false};
  std::string failure;
  bool limited = false;
  std::mutex failure_mutex;
  parallel_for(cfg.samples_per_length, cfg.threads, [&](std::size_t i) {
    if (failed.load(std::memory_order_relaxed)) return;
    try {
      Rng rng(sample_seed(cfg.master_seed, n, i));
      const Permutation p = random_permutation(n, rng);
      st.lengths[i] = static_cast<std::uint32_t>(solver.length(p));
    } catch (const ResourceLimit& e) {
      std::lock_guard lock(failure_mutex);
      if (!failed.exchange(true)) {
        failure = e.what();
        limited = true;
      }
    } catch (const std::exception& e) {
      std::lock_guard lock(failure_mutex);
      if (!failed.exchange(true)) failure = e.what();
    }
  });
  st.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (failed) {
    st.error = failure;
    st.resource_limited = limited;
    st.lengths.clear();
    return st;
  }

  // Reductions run in index order so the result is independent of threads.
  std::uint64_t sum = 0;
  for (std::uint32_t x : st.lengths) sum += x;
  const double m = static_cast<double>(st.samples);
  st.mean = static_cast<double>(sum) / m;
  double ss = 0;
  for (std::uint32_t x : st.lengths) {
    const double d = static_cast<double>(x) - st.mean;
    ss += d * d;
  }
  st.stddev = std::sqrt(ss / (m - 1));
  st.c_hat = c_estimate(st.mean, n);
  return st;
}

}  // namespace

std::vector<SampleStats> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const PatternClass cls = parse_class(cfg.class_expr);
  const Solver solver = make_solver(cls, cfg.solver, cfg.limits);
  std::vector<SampleStats> out;
  for (std::size_t n : cfg.lengths) out.push_back(run_rung(solver, cfg, n));
  return out;
}

ConcentrationReport check_concentration(std::span<const std::uint32_t> lengths, std::size_t n, double alpha,
                                        double beta) {
  if (!(alpha > 1.0 / 3.0)) throw InvalidInput("concentration: alpha must exceed 1/3");
  if (!(beta < std::min(alpha, 3.0 * alpha - 1.0))) {
    throw InvalidInput("concentration: beta must be below min(alpha, 3 alpha - 1)");
  }
  if (lengths.size() < 2) throw InvalidInput("concentration: at least 2 samples are required");
  if (n == 0) throw InvalidInput("concentration: n must be positive");

  ConcentrationReport r;
  r.n = n;
  r.samples = lengths.size();
  r.alpha = alpha;
  r.beta = beta;
  const double m = static_cast<double>(lengths.size());
  double mean = 0;
  for (std::uint32_t x : lengths) mean += x;
  mean /= m;
  double ss = 0;
  for (std::uint32_t x : lengths) ss += (x - mean) * (x - mean);
  const double mean_se = std::sqrt(ss / (m - 1)) / std::sqrt(m);

  r.deviation = std::pow(static_cast<double>(n), alpha);
  std::size_t beyond = 0;
  std::size_t beyond_adjusted = 0;
  for (std::uint32_t x : lengths) {
    const double d = std::fabs(x - mean);
    if (d >= r.deviation) ++beyond;
    if (d >= r.deviation + 3.0 * mean_se) ++beyond_adjusted;
  }
  r.empirical_tail = static_cast<double>(beyond) / m;
  r.adjusted_tail = static_cast<double>(beyond_adjusted) / m;
  r.log_bound = -std::pow(static_cast<double>(n), beta);
  r.bound = std::exp(r.log_bound);
  const double binomial_se = std::sqrt(r.bound * (1.0 - r.bound) / m);
  r.satisfied = r.adjusted_tail <= r.bound + 3.0 * binomial_se;
  return r;
}

TailBoundReport check_tail_bound(std::span<const std::uint32_t> lengths, std::size_t n, double s) {
  if (!(s > 0)) throw InvalidInput("tail bound: s must be positive");
  if (lengths.empty()) throw InvalidInput("tail bound: no samples");
  TailBoundReport r;
  r.n = n;
  r.samples = lengths.size();
  r.s = s;
  r.threshold = 2.0 * std::numbers::e * std::sqrt(s * static_cast<double>(n));
  std::size_t hits = 0;
  for (std::uint32_t x : lengths) {
    if (x >= r.threshold) ++hits;
    r.max_observed = std::max(r.max_observed, x);
  }
  r.empirical_exceed = static_cast<double>(hits) / static_cast<double>(lengths.size());
  r.log_bound = -r.threshold;
  r.bound = std::exp(r.log_bound);
  r.vacuous = r.threshold > static_cast<double>(n);
  return r;
}

double default_tail_s(const PatternClass& c, const CountOptions& options) {
  if (const auto known = known_limit(c)) return known->value;
  const std::size_t limit = c.is_leaf() ? options.leaf_max : options.composite_max;
  const SwEstimate est = sw_estimate(count_avoiders(c, limit, options));
  double s = 0;
  for (const auto& r : est.ratios) {
    if (r) s = std::max(s, *r);
  }
  if (s <= 0) throw InvalidInput("tail bound: no usable growth estimate for " + c.to_string());
  return s;
}

namespace {

// Published summary rows: mean, sample standard deviation and c estimate of
// 1000 samples per length.
constexpr PaperRow kTableL2[] = {
    {10000, 239.3, 4.5, 1.431},   {20000, 340.7, 5.2, 1.451},   {40000, 484.7, 6.1, 1.468},
    {80000, 688.4, 6.4, 1.481},   {160000, 978.1, 7.1, 1.495},  {320000, 1386.8, 8.3, 1.503},
    {640000, 1965.3, 9.3, 1.510}, {1280000, 2785.3, 10.2, 1.515},
};

constexpr PaperRow kTableL[] = {
    {100, 23.8, 1.8, 1.418},  {200, 34.8, 2.2, 1.517},  {400, 50.6, 2.5, 1.602},  {800, 73.4, 3.0, 1.682},
    {1600, 105.2, 3.3, 1.730}, {3200, 150.7, 4.0, 1.774}, {6400, 215.9, 4.4, 1.821}, {12800, 307.5, 4.9, 1.847},
};

}  // namespace

std::span<const PaperRow> paper_table(TableId id) {
  return id == TableId::L2 ? std::span<const PaperRow>(kTableL2) : std::span<const PaperRow>(kTableL);
}

std::string table_class(TableId id) { return id == TableId::L2 ? "av(231,312,321)" : "av(231,312)"; }

TableReport reproduce_table(const TableConfig& cfg) {
  if (!(cfg.scale > 0)) throw InvalidInput("reproduce-table: scale must be positive");
  const auto table = paper_table(cfg.table);
  const std::size_t rungs = std::min(cfg.rungs, table.size());
  if (rungs == 0) throw InvalidInput("reproduce-table: at least one rung is required");

  TableReport report;
  report.table = cfg.table;
  report.class_expr = table_class(cfg.table);
  report.samples = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(1000.0 * cfg.scale)));

  ExperimentConfig ecfg;
  ecfg.class_expr = report.class_expr;
  ecfg.samples_per_length = report.samples;
  ecfg.master_seed = cfg.master_seed;
  ecfg.solver = cfg.solver;
  ecfg.threads = cfg.threads;
  ecfg.limits = cfg.limits;
  for (std::size_t i = 0; i < rungs; ++i) ecfg.lengths.push_back(table[i].n);

  const auto stats = run_experiment(ecfg);
  for (std::size_t i = 0; i < rungs; ++i) {
    TableRow row{table[i], stats[i], 0.0, !stats[i].error.empty()};
    if (!row.skipped) {
      const double se = table[i].stddev / std::sqrt(static_cast<double>(report.samples));
      row.z_mean = (stats[i].mean - table[i].mean) / se;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace permlab
