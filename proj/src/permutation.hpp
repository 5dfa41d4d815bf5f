#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace permlab {

using Value = std::uint32_t;

// A permutation of {1..n} in one-line notation. The empty permutation is a
// valid value and is involved in every permutation.
class Permutation {
 public:
  Permutation() = default;

  // Throws InvalidInput unless `values` is a rearrangement of 1..n.
  explicit Permutation(std::vector<Value> values);

  static Permutation identity(std::size_t n);
  static Permutation decreasing(std::size_t n);

  // Caller guarantees the bijection; skips validation on hot paths.
  static Permutation from_unchecked(std::vector<Value> values) {
    Permutation p;
    p.values_ = std::move(values);
    return p;
  }

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Value operator[](std::size_t i) const { return values_[i]; }
  std::span<const Value> values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<Value> values_;
};

// Rank-compresses a sequence of distinct, totally ordered entries into the
// permutation with the same relative order.
template <class T>
Permutation pattern_of(std::span<const T> seq) {
  std::vector<std::size_t> order(seq.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return seq[a] < seq[b]; });
  std::vector<Value> ranks(seq.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && !(seq[order[r - 1]] < seq[order[r]])) {
      throw InvalidInput("pattern_of: duplicate entries");
    }
    ranks[order[r]] = static_cast<Value>(r + 1);
  }
  return Permutation::from_unchecked(std::move(ranks));
}

template <class T>
Permutation pattern_of(const std::vector<T>& seq) {
  return pattern_of(std::span<const T>(seq));
}

inline Permutation pattern_of(const Permutation& p) { return p; }

// Pattern of the entries of `p` at the given 0-based positions (kept in order).
Permutation pattern_at(const Permutation& p, std::span<const std::size_t> positions);

// True iff some subsequence of `p` has pattern `q`.
bool involves(const Permutation& p, const Permutation& q);

// True iff `q` occurs in `p` using the last entry of `p` as the image of the
// last entry of `q`. Used for incremental prefix checks.
bool involves_at_end(std::span<const Value> p, const Permutation& q);

Permutation direct_sum(const Permutation& a, const Permutation& b);
Permutation skew_sum(const Permutation& a, const Permutation& b);

// Rotation k is p_{k+1}..p_n p_1..p_k; entry 0 is p itself.
std::vector<Permutation> cyclic_rotations(const Permutation& p);
Permutation rotate(const Permutation& p, std::size_t k);

Permutation reverse(const Permutation& p);
Permutation complement(const Permutation& p);
Permutation inverse(const Permutation& p);

struct Symmetries {
  Permutation reverse;
  Permutation complement;
  Permutation inverse;
};

Symmetries symmetries(const Permutation& p);

bool is_increasing(const Permutation& p);
bool is_decreasing(const Permutation& p);

// One-line text format: space-separated positive integers.
Permutation parse_permutation(std::string_view line);
std::string format_permutation(const Permutation& p, char sep = ' ');

// Compact form used by the class mini-language: "2413" when every value is
// a single digit, otherwise "[10 2 ...]".
std::string compact_form(const Permutation& p);

}  // namespace permlab
