#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "enumerate.hpp"
#include "solvers.hpp"

namespace permlab {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Per-length stream key and per-sample seed. A sample's permutation depends
// only on (master_seed, n, index), never on scheduling.
std::uint64_t stream_id(std::uint64_t master_seed, std::uint64_t n);
std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t n, std::uint64_t index);

// Uniform integer in [0, range) by multiply-shift with Lemire's rejection of
// the short interval, so the result is exactly uniform. range must be > 0.
std::uint64_t bounded(Rng& rng, std::uint64_t range);

// Fisher-Yates over 1..n.
Permutation random_permutation(std::size_t n, Rng& rng);

// base * 2^k for k = 0..7.
std::vector<std::size_t> default_ladder(std::size_t base);

struct ExperimentConfig {
  std::string class_expr;
  std::vector<std::size_t> lengths;
  std::size_t samples_per_length = 1000;
  std::uint64_t master_seed = 0;
  std::string solver = "auto";
  unsigned threads = 1;
  SolverLimits limits;
};

// Throws InvalidInput when lengths are empty, zero, or not strictly
// increasing, or when fewer than two samples are requested.
void validate(const ExperimentConfig& cfg);

struct SampleStats {
  std::size_t n = 0;
  std::size_t samples = 0;
  double mean = 0;
  double stddev = 0;  // divisor samples - 1
  double c_hat = 0;   // (mean / (2 sqrt n))^2
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
  double wall_time_s = 0;
  std::vector<std::uint32_t> lengths;  // per-sample, in index order
  std::string error;                   // non-empty when this rung failed
  bool resource_limited = false;
};

double c_estimate(double mean, std::size_t n);

// Per-rung failures (a solver limit, say) are reported in SampleStats::error
// and do not stop the remaining rungs.
std::vector<SampleStats> run_experiment(const ExperimentConfig& cfg);

struct ConcentrationReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  double alpha = 0;
  double beta = 0;
  double deviation = 0;        // n^alpha
  double empirical_tail = 0;   // share with |L - mean| >= n^alpha
  double adjusted_tail = 0;    // same with the threshold widened by 3 standard errors of the mean
  double bound = 0;            // exp(-n^beta)
  double log_bound = 0;        // -n^beta
  bool satisfied = false;      // adjusted_tail <= bound + 3 binomial standard errors
};

// Requires alpha > 1/3 and beta < min(alpha, 3 alpha - 1).
ConcentrationReport check_concentration(std::span<const std::uint32_t> lengths, std::size_t n, double alpha,
                                        double beta);

struct TailBoundReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  double s = 0;
  double threshold = 0;          // 2e sqrt(s n)
  double empirical_exceed = 0;   // share with L >= threshold
  double log_bound = 0;          // -2e sqrt(s n); the bound itself underflows quickly
  double bound = 0;
  std::uint32_t max_observed = 0;
  bool vacuous = false;          // threshold > n, no sample can reach it
};

TailBoundReport check_tail_bound(std::span<const std::uint32_t> lengths, std::size_t n, double s);

// Growth bound for tail checks: the known limit when there is one, else the
// largest ratio of consecutive exact counts up to the enumeration limit.
double default_tail_s(const PatternClass& c, const CountOptions& options = {});

enum class TableId { L2, L };

struct PaperRow {
  std::size_t n;
  double mean;
  double stddev;
  double c_hat;
};

std::span<const PaperRow> paper_table(TableId id);
std::string table_class(TableId id);

struct TableConfig {
  TableId table = TableId::L2;
  double scale = 1.0;        // samples = 1000 * scale
  std::size_t rungs = 8;     // leading rungs of the ladder to run
  std::uint64_t master_seed = 0;
  std::string solver = "auto";
  unsigned threads = 1;
  SolverLimits limits;
};

struct TableRow {
  PaperRow paper;
  SampleStats observed;
  double z_mean = 0;  // (observed - published mean) / (published sd / sqrt samples)
  bool skipped = false;
};

struct TableReport {
  TableId table;
  std::string class_expr;
  std::size_t samples = 0;
  std::vector<TableRow> rows;
};

TableReport reproduce_table(const TableConfig& cfg);

}  // namespace permlab
