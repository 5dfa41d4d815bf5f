#include "enumerate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace permlab {

namespace {

class PrefixCounter {
 public:
  PrefixCounter(const PatternClass& c, std::size_t n, const MembershipLimits& limits)
      : cls_(c), n_(n), limits_(limits), used_(n + 1, false) {
    prefix_.reserve(n);
  }

  std::uint64_t count_with_first(Value first) {
    if (!push(first)) return 0;
    const std::uint64_t total = extend();
    pop();
    return total;
  }

 private:
  bool push(Value v) {
    prefix_.push_back(v);
    used_[v] = true;
    if (admissible()) return true;
    pop();
    return false;
  }

  void pop() {
    used_[prefix_.back()] = false;
    prefix_.pop_back();
  }

  bool admissible() const {
    if (cls_.is_leaf()) {
      for (const Permutation& q : cls_.basis()) {
        if (involves_at_end(prefix_, q)) return false;
      }
      return true;
    }
    return member(cls_, pattern_of(prefix_), limits_);
  }

  std::uint64_t extend() {
    if (prefix_.size() == n_) return 1;
    std::uint64_t total = 0;
    for (Value v = 1; v <= n_; ++v) {
      if (used_[v]) continue;
      if (push(v)) {
        total += extend();
        pop();
      }
    }
    return total;
  }

  const PatternClass& cls_;
  std::size_t n_;
  const MembershipLimits& limits_;
  std::vector<bool> used_;
  std::vector<Value> prefix_;
};

}  // namespace

CountSequence count_avoiders(const PatternClass& c, std::size_t max_n, const CountOptions& options) {
  const std::size_t limit = c.is_leaf() ? options.leaf_max : options.composite_max;
  if (max_n > limit) {
    throw ResourceLimit("exhaustive enumeration limited to n <= " + std::to_string(limit) + ", got " +
                        std::to_string(max_n));
  }
  if (max_n == 0) throw InvalidInput("count_avoiders: max n must be positive");

  // One task per (n, first value); each task writes its own slot so the sum
  // does not depend on scheduling.
  struct Task {
    std::size_t n;
    Value first;
  };
  std::vector<Task> tasks;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (Value v = 1; v <= n; ++v) tasks.push_back({n, v});
  }
  std::vector<std::uint64_t> partial(tasks.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      PrefixCounter counter(c, tasks[i].n, options.membership);
      partial[i] = counter.count_with_first(tasks[i].first);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CountSequence cs{c, std::vector<std::uint64_t>(max_n, 0), true};
  for (std::size_t i = 0; i < tasks.size(); ++i) cs.counts[tasks[i].n - 1] += partial[i];
  return cs;
}

std::optional<KnownLimit> known_limit(const PatternClass& c) {
  if (!c.is_leaf()) return std::nullopt;
  const auto& basis = c.basis();
  if (basis.size() == 1) {
    const Permutation& q = basis.front();
    const double k = static_cast<double>(q.size());
    if (is_decreasing(q)) return KnownLimit{(k - 1) * (k - 1), "Regev 1981: Av(k...21) grows as (k-1)^2"};
    if (is_increasing(q)) return KnownLimit{(k - 1) * (k - 1), "Regev 1981: Av(12...k) grows as (k-1)^2"};
    if (q.size() == 3) return KnownLimit{4.0, "Catalan enumeration of single length-3 patterns"};
    return std::nullopt;
  }
  const auto is = [&](std::initializer_list<const char*> elems) {
    if (elems.size() != basis.size()) return false;
    std::size_t i = 0;
    for (const char* e : elems) {
      if (compact_form(basis[i++]) != e) return false;
    }
    return true;
  };
  if (is({"231", "312"})) return KnownLimit{2.0, "layered permutations: 2^(n-1) of length n"};
  if (is({"231", "312", "321"})) {
    return KnownLimit{(1.0 + std::sqrt(5.0)) / 2.0, "layered with blocks of size <= 2: Fibonacci numbers, golden ratio"};
  }
  return std::nullopt;
}

SwEstimate sw_estimate(const CountSequence& cs) {
  if (cs.counts.empty()) throw InvalidInput("sw_estimate: empty count sequence");
  SwEstimate est{cs.cls, {}, {}, known_limit(cs.cls)};
  for (std::size_t i = 0; i < cs.counts.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    est.roots.push_back(std::pow(static_cast<double>(cs.counts[i]), 1.0 / n));
  }
  for (std::size_t i = 0; i + 1 < cs.counts.size(); ++i) {
    if (cs.counts[i] == 0) {
      est.ratios.emplace_back(std::nullopt);
    } else {
      est.ratios.emplace_back(static_cast<double>(cs.counts[i + 1]) / static_cast<double>(cs.counts[i]));
    }
  }
  return est;
}

}  // namespace permlab
