#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pattern_class.hpp"

namespace permlab {

// Length of a longest subsequence in the solved class and one witness, as
// strictly increasing 1-based positions into the input.
struct SolverResult {
  std::size_t length = 0;
  std::vector<std::size_t> witness;
};

// Two-sided bound on the longest Merge(A,B) subsequence given the exact
// A and B values and the longest length in A ∩ B.
struct MergeBounds {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t overlap_cap = 0;
};

struct SolverLimits {
  std::size_t oracle_max = 16;
  std::size_t sum_max = 500;
  std::size_t greene_witness_max = 2000;
  MembershipLimits membership;
};

// A solver bound to one class. `length` skips witness bookkeeping where the
// underlying algorithm allows it.
class Solver {
 public:
  using SolveFn = std::function<SolverResult(const Permutation&)>;
  using LengthFn = std::function<std::size_t(const Permutation&)>;

  Solver(std::string name, SolveFn solve, LengthFn length = {})
      : name_(std::move(name)), solve_(std::move(solve)), length_(std::move(length)) {}

  const std::string& name() const { return name_; }
  SolverResult solve(const Permutation& p) const { return solve_(p); }
  std::size_t length(const Permutation& p) const { return length_ ? length_(p) : solve_(p).length; }

 private:
  std::string name_;
  SolveFn solve_;
  LengthFn length_;
};

// Brute force: subsets by decreasing size, combinations in lexicographic
// order, so the witness is the lexicographically least maximum one.
SolverResult lps_oracle(const Permutation& p, const PatternClass& c, const SolverLimits& limits = {});

// Patience sorting, O(n log L).
SolverResult lis(const Permutation& p);
std::size_t lis_length(const Permutation& p);

// Row lengths of the Schensted insertion tableau, truncated to `rows` rows.
std::vector<std::size_t> rsk_row_lengths(const Permutation& p, std::size_t rows);

// Longest subsequence avoiding k(k-1)...1: the first k-1 tableau rows.
SolverResult greene(const Permutation& p, std::size_t k, const SolverLimits& limits = {});
std::size_t greene_length(const Permutation& p, std::size_t k);

// Longest subsequence avoiding 12...k, via greene on the reversal.
SolverResult lps_monotone_inc(const Permutation& p, std::size_t k, const SolverLimits& limits = {});
std::size_t lps_monotone_inc_length(const Permutation& p, std::size_t k);

// Longest subsequence in Av(231, 312). O(n^2 log n) time.
SolverResult lps_layered(const Permutation& p);
std::size_t lps_layered_length(const Permutation& p);

// Longest subsequence in Av(231, 312, 321). O(n log n) time.
SolverResult lps_layered2(const Permutation& p);
std::size_t lps_layered2_length(const Permutation& p);

SolverResult lps_union(const Permutation& p, const Solver& a, const Solver& b);
SolverResult lps_juxt(const Permutation& p, const Solver& a, const Solver& b);
SolverResult lps_sum_class(const Permutation& p, const Solver& a, const Solver& b,
                           const SolverLimits& limits = {});
SolverResult lps_rot(const Permutation& p, const Solver& a);

std::size_t lps_union_length(const Permutation& p, const Solver& a, const Solver& b);
std::size_t lps_juxt_length(const Permutation& p, const Solver& a, const Solver& b);
std::size_t lps_sum_class_length(const Permutation& p, const Solver& a, const Solver& b,
                                 const SolverLimits& limits = {});
std::size_t lps_rot_length(const Permutation& p, const Solver& a);

// Throws InvalidInput on a negative overlap_cap.
MergeBounds lps_merge_bounds(const Permutation& p, const Solver& a, const Solver& b,
                             std::int64_t overlap_cap);

// Selector: "auto", "oracle", or a named algorithm ("lis", "greene",
// "monotone", "layered", "layered2", "union", "juxt", "sum", "rot") that must
// fit the class. Composite selectors solve their children with "auto".
Solver make_solver(const PatternClass& c, std::string_view selector = "auto",
                   const SolverLimits& limits = {});

}  // namespace permlab
