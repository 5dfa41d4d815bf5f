#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <map>

#include "experiment.hpp"

using namespace permlab;

TEST_CASE("random permutation basics") {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) CHECK(random_permutation(1, rng) == Permutation::identity(1));
  CHECK(random_permutation(0, rng).empty());
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) CHECK(random_permutation(30, a) == random_permutation(30, b));
  const Permutation big = random_permutation(1000, a);
  CHECK_NOTHROW(Permutation(std::vector<Value>(big.begin(), big.end())));
}

TEST_CASE("bounded draws stay in range") {
  Rng rng(8);
  for (std::uint64_t range : {1ull, 2ull, 3ull, 7ull, 1000ull, (1ull << 63) + 5}) {
    for (int i = 0; i < 1000; ++i) CHECK(bounded(rng, range) < range);
  }
}

TEST_CASE("chi-square uniformity over S_4") {
  Rng rng(20231);
  std::map<std::vector<Value>, std::uint64_t> cells;
  const std::uint64_t draws = 1'000'000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const Permutation p = random_permutation(4, rng);
    ++cells[std::vector<Value>(p.begin(), p.end())];
  }
  REQUIRE(cells.size() == 24);
  const double expected = static_cast<double>(draws) / 24.0;
  double chi2 = 0;
  for (const auto& [perm, count] : cells) {
    const double d = static_cast<double>(count) - expected;
    chi2 += d * d / expected;
  }
  // 0.999 quantile of chi-square with 23 degrees of freedom.
  CHECK(chi2 < 49.728);
}

TEST_CASE("seed derivation") {
  CHECK(sample_seed(1, 100, 0) != sample_seed(1, 100, 1));
  CHECK(sample_seed(1, 100, 0) != sample_seed(1, 200, 0));
  CHECK(sample_seed(1, 100, 0) != sample_seed(2, 100, 0));
  CHECK(sample_seed(9, 9, 9) == sample_seed(9, 9, 9));
  CHECK(stream_id(5, 10) != stream_id(5, 11));
}

TEST_CASE("ladder and validation") {
  CHECK(default_ladder(100) == std::vector<std::size_t>{100, 200, 400, 800, 1600, 3200, 6400, 12800});
  ExperimentConfig cfg;
  cfg.class_expr = "av(21)";
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg.lengths = {10, 10};
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg.lengths = {0, 10};
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg.lengths = {10, 20};
  cfg.samples_per_length = 1;
  CHECK_THROWS_AS(validate(cfg), InvalidInput);
  cfg.samples_per_length = 2;
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("experiment statistics") {
  ExperimentConfig cfg;
  cfg.class_expr = "av(231,312)";
  cfg.lengths = {20, 40};
  cfg.samples_per_length = 200;
  cfg.master_seed = 7;
  const auto stats = run_experiment(cfg);
  REQUIRE(stats.size() == 2);
  for (const SampleStats& s : stats) {
    CHECK(s.error.empty());
    CHECK(s.samples == 200);
    CHECK(s.lengths.size() == 200);
    CHECK(s.mean >= 1);
    CHECK(s.mean <= static_cast<double>(s.n));
    CHECK(s.stddev >= 0);
    CHECK(s.c_hat == doctest::Approx(std::pow(s.mean / (2 * std::sqrt(double(s.n))), 2)).epsilon(1e-15));
    CHECK(s.stream_id == stream_id(7, s.n));
    // Each sample can be reproduced in isolation.
    Rng rng(sample_seed(7, s.n, 17));
    CHECK(s.lengths[17] == lps_layered_length(random_permutation(s.n, rng)));
  }
}

TEST_CASE("experiments are independent of thread count") {
  ExperimentConfig cfg;
  cfg.class_expr = "av(231,312,321)";
  cfg.lengths = {50, 100, 200};
  cfg.samples_per_length = 300;
  cfg.master_seed = 11;
  cfg.threads = 1;
  const auto one = run_experiment(cfg);
  cfg.threads = 4;
  const auto four = run_experiment(cfg);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].lengths == four[i].lengths);
    CHECK(one[i].mean == four[i].mean);
    CHECK(one[i].stddev == four[i].stddev);
    CHECK(one[i].c_hat == four[i].c_hat);
  }
}

TEST_CASE("resource limits are per rung") {
  ExperimentConfig cfg;
  cfg.class_expr = "av(312)";
  cfg.lengths = {8, 30};
  cfg.samples_per_length = 5;
  const auto stats = run_experiment(cfg);
  REQUIRE(stats.size() == 2);
  CHECK(stats[0].error.empty());
  CHECK_FALSE(stats[1].error.empty());
  CHECK(stats[1].resource_limited);
  cfg.class_expr = "av(";
  CHECK_THROWS_AS(run_experiment(cfg), InvalidInput);
}

TEST_CASE("concentration checks") {
  std::vector<std::uint32_t> tight(1000);
  for (std::size_t i = 0; i < tight.size(); ++i) tight[i] = 235 + static_cast<std::uint32_t>(i % 9);
  const auto r = check_concentration(tight, 10000, 0.45, 0.3);
  CHECK(r.deviation == doctest::Approx(63.0957).epsilon(1e-4));
  CHECK(r.empirical_tail == 0.0);
  CHECK(r.satisfied);
  CHECK(r.log_bound == doctest::Approx(-std::pow(10000.0, 0.3)));

  const auto trivial = check_concentration(tight, 10000, 1.0, 0.5);
  CHECK(trivial.empirical_tail == 0.0);

  std::vector<std::uint32_t> spread;
  for (int i = 0; i < 100; ++i) spread.push_back(i % 2 ? 1 : 60);
  const auto wide = check_concentration(spread, 100, 0.34, 0.01);
  CHECK(wide.empirical_tail == 1.0);
  CHECK(wide.empirical_tail >= 0);
  CHECK_FALSE(wide.satisfied);

  CHECK_THROWS_AS(check_concentration(tight, 100, 0.3, 0.0), InvalidInput);
  CHECK_THROWS_AS(check_concentration(tight, 100, 0.45, 0.4), InvalidInput);
  CHECK_THROWS_AS(check_concentration(std::vector<std::uint32_t>{3}, 100, 0.45, 0.3), InvalidInput);
}

TEST_CASE("tail bound checks") {
  const std::vector<std::uint32_t> lengths{230, 240, 250, 260};
  const auto r = check_tail_bound(lengths, 10000, 1.7);
  CHECK(r.threshold == doctest::Approx(708.86).epsilon(1e-4));
  CHECK(r.empirical_exceed == 0.0);
  CHECK(r.max_observed == 260);
  CHECK_FALSE(r.vacuous);
  CHECK(r.log_bound == doctest::Approx(-r.threshold));

  const auto v = check_tail_bound(lengths, 50, 2.0);
  CHECK(v.threshold == doctest::Approx(54.366).epsilon(1e-4));
  CHECK(v.vacuous);

  const auto big = check_tail_bound(lengths, 10000, 2.0);
  CHECK(big.log_bound == doctest::Approx(-768.87).epsilon(1e-4));
  CHECK(big.bound == 0.0);
  CHECK_THROWS_AS(check_tail_bound(lengths, 100, 0.0), InvalidInput);
}

TEST_CASE("default growth bound for tail checks") {
  CHECK(default_tail_s(parse_class("av(231,312,321)")) == doctest::Approx(1.6180339887));
  CHECK(default_tail_s(parse_class("av(231,312)")) == 2.0);
  CountOptions small;
  small.leaf_max = 8;
  // No literature value: the largest consecutive-count ratio.
  const double s = default_tail_s(parse_class("av(2413,3142)"), small);
  CHECK(s > 4.0);
  CHECK(s < 6.0);
}

TEST_CASE("published tables are self-consistent") {
  for (TableId id : {TableId::L2, TableId::L}) {
    const auto rows = paper_table(id);
    REQUIRE(rows.size() == 8);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (id == TableId::L2) {
        CHECK(std::fabs(c_estimate(rows[i].mean, rows[i].n) - rows[i].c_hat) <= 0.002);
      } else {
        // Means are printed to one decimal; the c column must fit some mean that rounds to it.
        CHECK(c_estimate(rows[i].mean - 0.05, rows[i].n) <= rows[i].c_hat + 0.0005);
        CHECK(c_estimate(rows[i].mean + 0.05, rows[i].n) >= rows[i].c_hat - 0.0005);
      }
      if (i > 0) {
        CHECK(rows[i].n == 2 * rows[i - 1].n);
        CHECK(rows[i].c_hat > rows[i - 1].c_hat);
      }
    }
  }
  CHECK(paper_table(TableId::L2)[0].n == 10000);
  CHECK(paper_table(TableId::L)[0].n == 100);
  CHECK(table_class(TableId::L) == "av(231,312)");
}

TEST_CASE("small-scale table reproduction") {
  TableConfig cfg;
  cfg.table = TableId::L;
  cfg.scale = 0.05;
  cfg.rungs = 3;
  cfg.master_seed = 1;
  const TableReport r = reproduce_table(cfg);
  CHECK(r.samples == 50);
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    CHECK_FALSE(row.skipped);
    // Wide tolerance at 50 samples.
    CHECK(std::fabs(row.z_mean) < 5.0);
  }
  cfg.scale = 0;
  CHECK_THROWS_AS(reproduce_table(cfg), InvalidInput);
}
