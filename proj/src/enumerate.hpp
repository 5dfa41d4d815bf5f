#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pattern_class.hpp"

namespace permlab {

struct CountOptions {
  std::size_t leaf_max = 11;       // exhaustive limit for leaf classes
  std::size_t composite_max = 9;   // exhaustive limit for constructed classes
  unsigned threads = 1;
  MembershipLimits membership;
};

struct CountSequence {
  PatternClass cls;
  std::vector<std::uint64_t> counts;  // counts[i] is |class ∩ S_{i+1}|
  bool exact = true;
};

// |{p in S_n : member(c, p)}| for n = 1..max_n by prefix-pruned backtracking.
// Every class the mini-language can express is closed under taking patterns,
// so a prefix whose pattern is outside the class has no member extensions.
// Throws ResourceLimit past the configured limit for the class kind.
CountSequence count_avoiders(const PatternClass& c, std::size_t max_n, const CountOptions& options = {});

struct KnownLimit {
  double value;
  std::string citation;
};

// Literature values for the growth rate, keyed on the canonical basis.
std::optional<KnownLimit> known_limit(const PatternClass& c);

struct SwEstimate {
  PatternClass cls;
  std::vector<double> roots;                  // counts[n]^(1/n)
  std::vector<std::optional<double>> ratios;  // counts[n+1]/counts[n]; empty on a zero count
  std::optional<KnownLimit> known;
};

SwEstimate sw_estimate(const CountSequence& cs);

}  // namespace permlab
