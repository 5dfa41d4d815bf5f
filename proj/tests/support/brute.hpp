#pragma once

// Deliberately naive reference routines for tests. Nothing here shares code
// with the library beyond the Permutation value type.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "permutation.hpp"

namespace permlab::brute {

inline std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_unchecked(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Pattern by pairwise comparison counting.
template <class T>
std::vector<Value> rank_pattern(const std::vector<T>& seq) {
  std::vector<Value> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Value smaller = 0;
    for (std::size_t j = 0; j < seq.size(); ++j) smaller += seq[j] < seq[i];
    out[i] = smaller + 1;
  }
  return out;
}

inline std::vector<Value> subsequence(const Permutation& p, std::uint64_t mask) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (mask >> i & 1) out.push_back(p[i]);
  }
  return out;
}

// Every subset of positions, compared against q.
inline bool contains(const Permutation& p, const Permutation& q) {
  const std::vector<Value> target(q.begin(), q.end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != q.size()) continue;
    if (rank_pattern(subsequence(p, mask)) == target) return true;
  }
  return false;
}

inline bool avoids_all(const Permutation& p, const std::vector<Permutation>& basis) {
  for (const auto& q : basis) {
    if (contains(p, q)) return false;
  }
  return true;
}

inline std::size_t longest_increasing(const Permutation& p) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    const auto s = subsequence(p, mask);
    if (std::is_sorted(s.begin(), s.end())) best = std::max(best, s.size());
  }
  return best;
}

inline std::size_t longest_decreasing(const Permutation& p) {
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.size()); ++mask) {
    const auto s = subsequence(p, mask);
    if (std::is_sorted(s.rbegin(), s.rend())) best = std::max(best, s.size());
  }
  return best;
}

// Compositions of n into parts of size at most `max_part`; the layered
// permutations with blocks bounded by max_part are in bijection with them.
inline std::uint64_t bounded_compositions(std::size_t n, std::size_t max_part) {
  std::vector<std::uint64_t> ways(n + 1, 0);
  ways[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t part = 1; part <= std::min(i, max_part); ++part) ways[i] += ways[i - part];
  }
  return ways[n];
}

inline std::uint64_t catalan(std::size_t n) {
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

// Structural layered test: split into maximal runs of consecutive values
// placed in descending order, each block's values above all earlier ones.
inline bool is_layered_with_blocks_at_most(const std::vector<Value>& pattern, std::size_t max_block) {
  std::size_t i = 0;
  Value floor = 0;
  while (i < pattern.size()) {
    const Value top = pattern[i];
    std::size_t j = i + 1;
    while (j < pattern.size() && pattern[j] == pattern[j - 1] - 1) ++j;
    const std::size_t block = j - i;
    if (pattern[j - 1] != floor + 1 || block > max_block) return false;
    floor = top;
    i = j;
  }
  return true;
}

}  // namespace permlab::brute
