#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pattern_class.hpp"
#include "support/brute.hpp"

using namespace permlab;

namespace {

Permutation P(std::initializer_list<Value> v) { return Permutation(std::vector<Value>(v)); }

// Naive construction membership, independent of the library's search.
bool naive_juxt(const Permutation& p, const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
  for (std::size_t t = 0; t <= p.size(); ++t) {
    const std::vector<Value> head(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t));
    const std::vector<Value> tail(p.begin() + static_cast<std::ptrdiff_t>(t), p.end());
    if (brute::avoids_all(Permutation(brute::rank_pattern(head)), a) &&
        brute::avoids_all(Permutation(brute::rank_pattern(tail)), b)) {
      return true;
    }
  }
  return false;
}

bool naive_merge(const Permutation& p, const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
  const std::uint64_t full = (std::uint64_t{1} << p.size()) - 1;
  for (std::uint64_t mask = 0; mask <= full; ++mask) {
    if (brute::avoids_all(Permutation(brute::rank_pattern(brute::subsequence(p, mask))), a) &&
        brute::avoids_all(Permutation(brute::rank_pattern(brute::subsequence(p, full & ~mask))), b)) {
      return true;
    }
  }
  return false;
}

bool naive_sum(const Permutation& p, const std::vector<Permutation>& a, const std::vector<Permutation>& b) {
  for (std::size_t t = 0; t <= p.size(); ++t) {
    bool corner = true;
    for (std::size_t i = 0; i < t; ++i) corner = corner && p[i] <= t;
    if (!corner) continue;
    const std::vector<Value> head(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(t));
    const std::vector<Value> tail(p.begin() + static_cast<std::ptrdiff_t>(t), p.end());
    if (brute::avoids_all(Permutation(brute::rank_pattern(head)), a) &&
        brute::avoids_all(Permutation(brute::rank_pattern(tail)), b)) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("membership examples") {
  CHECK(member(parse_class("av(21)"), P({1, 2, 3})));
  CHECK(member(parse_class("av(231,312)"), P({2, 1, 4, 3, 5})));
  CHECK(member(parse_class("juxt(av(21),av(12))"), P({1, 3, 4, 2})));
  CHECK_FALSE(member(parse_class("juxt(av(21),av(12))"), P({2, 1, 3, 4})));
  CHECK(member(parse_class("av(231)"), Permutation{}));
  CHECK(member(parse_class("union(av(21),av(12))"), P({3, 2, 1})));
  CHECK_FALSE(member(parse_class("union(av(21),av(12))"), P({1, 3, 2})));
  CHECK(member(parse_class("sum(av(12),av(12))"), P({2, 1, 4, 3})));
  CHECK_FALSE(member(parse_class("sum(av(12),av(12))"), P({2, 1, 3, 5, 4})));
  CHECK(member(parse_class("rot(av(21))"), P({3, 4, 1, 2})));
  CHECK(member(parse_class("merge(av(21),av(12))"), P({3, 1, 4, 2})));
}

TEST_CASE("leaf classes are proper") {
  for (const char* expr : {"av(21)", "av(231,312)", "av(2413,3142)", "av([10 9 8 7 6 5 4 3 2 1])"}) {
    const PatternClass c = parse_class(expr);
    CHECK_FALSE(member(c, c.basis().front()));
    CHECK(min_basis_length(c) == c.basis().front().size());
  }
}

TEST_CASE("leaf basis is minimized and sorted") {
  const PatternClass c = parse_class("av(321, 4321, 231)");
  REQUIRE(c.basis().size() == 2);
  CHECK(c.basis()[0] == P({2, 3, 1}));
  CHECK(c.basis()[1] == P({3, 2, 1}));
  CHECK(c.to_string() == "av(231,321)");
  CHECK(parse_class("av(312,231)") == parse_class("av(231,312)"));
  CHECK(parse_class("av(12,12)").basis().size() == 1);
}

TEST_CASE("parser round trip") {
  for (const char* expr : {"av(21)", "union(av(21),av(12))", "sum(av(231,312),av(321))",
                           "juxt(av(21),rot(av(12)))", "merge(av(21),av(12))",
                           "rot(union(av(2413,3142),av([1 2 3 4 5 6 7 8 9 10])))"}) {
    const PatternClass c = parse_class(expr);
    CHECK(c.to_string() == expr);
    CHECK(parse_class(c.to_string()) == c);
  }
  CHECK(parse_class("  union( av( 21 ) , av(12) ) ").to_string() == "union(av(21),av(12))");
}

TEST_CASE("parser rejects malformed input") {
  for (const char* bad : {"", "av()", "av(1)", "av(11)", "av(13)", "av(21", "av(21))", "union(av(21))",
                          "rot(av(21),av(12))", "foo(av(21))", "av(2a1)", "av([1 2)", "av([0 1])",
                          "av(21,)", "sum(av(21),)", "av([1 1])"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_class(bad), InvalidInput);
  }
  CHECK_THROWS_AS(PatternClass::leaf({}), InvalidInput);
  CHECK_THROWS_AS(PatternClass::leaf({P({1})}), InvalidInput);
}

TEST_CASE("leaf membership agrees with subset enumeration") {
  const std::vector<std::vector<Permutation>> bases{
      {P({2, 1})}, {P({2, 3, 1})}, {P({2, 3, 1}), P({3, 1, 2})}, {P({1, 3, 2, 4}), P({3, 2, 1})}};
  for (const auto& basis : bases) {
    const PatternClass c = PatternClass::leaf(basis);
    for (std::size_t n = 0; n <= 7; ++n) {
      for (const auto& p : brute::all_permutations(n)) REQUIRE(member(c, p) == brute::avoids_all(p, basis));
    }
  }
}

TEST_CASE("construction membership agrees with naive definitions") {
  const std::vector<Permutation> inc{P({2, 1})};
  const std::vector<Permutation> dec{P({1, 2})};
  const std::vector<Permutation> cat{P({2, 3, 1})};
  const PatternClass juxt = parse_class("juxt(av(21),av(231))");
  const PatternClass merge = parse_class("merge(av(21),av(12))");
  const PatternClass sum = parse_class("sum(av(12),av(231))");
  const PatternClass rot = parse_class("rot(av(231))");
  for (std::size_t n = 0; n <= 7; ++n) {
    for (const auto& p : brute::all_permutations(n)) {
      INFO(format_permutation(p));
      REQUIRE(member(juxt, p) == naive_juxt(p, inc, cat));
      REQUIRE(member(merge, p) == naive_merge(p, inc, dec));
      REQUIRE(member(sum, p) == naive_sum(p, dec, cat));
      if (n > 0) {
        bool any = false;
        for (std::size_t k = 0; k < n; ++k) {
          std::vector<Value> v(p.begin() + static_cast<std::ptrdiff_t>(k), p.end());
          v.insert(v.end(), p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
          any = any || brute::avoids_all(Permutation(v), cat);
        }
        REQUIRE(member(rot, p) == any);
      }
    }
  }
}

TEST_CASE("downward closure of leaf classes") {
  const PatternClass c = parse_class("av(2413,321)");
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const auto& p : brute::all_permutations(n)) {
      if (!member(c, p)) continue;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        REQUIRE(member(c, Permutation(brute::rank_pattern(brute::subsequence(p, mask)))));
      }
    }
  }
}

TEST_CASE("merge membership limit") {
  MembershipLimits limits;
  limits.merge_max = 6;
  const PatternClass m = parse_class("merge(av(21),av(12))");
  CHECK_THROWS_AS(member(m, Permutation::identity(7), limits), ResourceLimit);
  CHECK(member(m, Permutation::identity(6), limits));
}
