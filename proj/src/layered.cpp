// Longest layered subsequences.
//
// Layered: a layer is a decreasing run from its top t (first, largest) to its
// bottom b (last, smallest). Every entry of the layer sits in the rectangle
// spanned by t and b, so the layer's size is the longest decreasing path from
// t to b, and the only state passed to the next layer is (value of t,
// position of b): the next layer must start after b and stay above t.
//
// With G(t, b) = D(t, b) + best over later layers (top after b, bottom above
// t), tops are processed by decreasing value. A layer (t', b') becomes usable
// once the current top's value falls below b', so it is parked in a bucket
// keyed by b' and released into a per-position array when that threshold is
// crossed. Per top only the prefix maxima of G over decreasing bottom values
// are parked, which bounds the parked events by n times the answer.
//
// Layered with blocks of size <= 2: a left-to-right sweep keeping T[l], the
// least possible maximum of the last block over subsequences of length l
// that end with a closed block. T is nondecreasing in l. An arriving value x
// extends the longest l* with T[l*] < x by a singleton, or closes a pair
// (a, x) with a > x, which can only improve T[l* + 2]. The best a is the
// least value above x placed after the moment T[l*] first dropped below x,
// found with a max-position segment tree over values.

#include <algorithm>
#include <cstdint>

#include "solvers.hpp"

namespace permlab {

namespace {

constexpr std::int32_t kNone = -1;

struct LayerEvent {
  std::uint32_t top;     // 0-based position
  std::uint32_t bottom;  // 0-based position
  std::uint32_t total;   // this layer plus everything after it
  std::int32_t next;     // following layer's event, or kNone
};

// First index with a[i] >= key in a sorted array; the inner loop of the
// layered sweep spends most of its time here.
inline std::size_t branchless_lower_bound(const std::uint32_t* a, std::size_t len, std::uint32_t key) {
  const std::uint32_t* base = a;
  while (len > 1) {
    const std::size_t half = len / 2;
    base = base[half - 1] < key ? base + half : base;
    len -= half;
  }
  return static_cast<std::size_t>(base - a) + (len == 1 && *base < key);
}

// Longest decreasing path from `top` to `bottom` inside their rectangle.
std::vector<std::size_t> layer_path(const std::vector<std::uint32_t>& val, std::uint32_t top,
                                    std::uint32_t bottom) {
  if (top == bottom) return {top};
  const std::uint32_t hi = val[top];
  const std::uint32_t lo = val[bottom];
  // Decreasing sequences as increasing sequences of -value.
  std::vector<std::uint32_t> tails_val;
  std::vector<std::uint32_t> tails_pos;
  std::vector<std::int64_t> pred(bottom + 1, kNone);
  for (std::uint32_t q = top + 1; q <= bottom; ++q) {
    const std::uint32_t x = val[q];
    if (x >= hi || x < lo) continue;
    const std::uint32_t key = hi - x;
    const auto it = std::lower_bound(tails_val.begin(), tails_val.end(), key);
    const std::size_t j = static_cast<std::size_t>(it - tails_val.begin());
    pred[q] = j == 0 ? static_cast<std::int64_t>(top) : static_cast<std::int64_t>(tails_pos[j - 1]);
    if (j == tails_val.size()) {
      tails_val.push_back(key);
      tails_pos.push_back(q);
    } else {
      tails_val[j] = key;
      tails_pos[j] = q;
    }
  }
  std::vector<std::size_t> path;
  for (std::int64_t q = bottom; q != kNone; q = (q == top ? kNone : pred[q])) {
    path.push_back(static_cast<std::size_t>(q));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

template <bool kWitness>
std::size_t layered_impl(const Permutation& p, std::vector<std::size_t>* witness) {
  const std::uint32_t n = static_cast<std::uint32_t>(p.size());
  if (n == 0) return 0;
  std::vector<std::uint32_t> val(n);
  std::vector<std::uint32_t> pos_of(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    val[i] = p[i] - 1;
    pos_of[val[i]] = i;
  }

  std::vector<std::uint32_t> active(n, 0);
  std::vector<std::int32_t> active_event(n, kNone);
  std::vector<std::vector<std::int32_t>> parked(n);
  std::vector<LayerEvent> events;

  std::vector<std::uint32_t> suffix(n + 1, 0);
  std::vector<std::int32_t> suffix_event(n + 1, kNone);
  std::vector<std::uint32_t> total_at(n, 0);
  std::vector<std::int32_t> next_at(kWitness ? n : 0, kNone);
  std::vector<std::uint32_t> tails;
  tails.reserve(n);

  std::uint32_t best = 0;
  std::int32_t best_event = kNone;

  for (std::uint32_t v = n; v-- > 0;) {
    if (v + 1 < n) {
      for (std::int32_t id : parked[v + 1]) {
        const LayerEvent& e = events[static_cast<std::size_t>(id)];
        if (e.total > active[e.top]) {
          active[e.top] = e.total;
          active_event[e.top] = id;
        }
      }
      std::vector<std::int32_t>().swap(parked[v + 1]);
    }
    const std::uint32_t t = pos_of[v];

    suffix[n] = 0;
    suffix_event[n] = kNone;
    for (std::uint32_t q = n; q-- > t + 1;) {
      if (active[q] > suffix[q + 1]) {
        suffix[q] = active[q];
        if constexpr (kWitness) suffix_event[q] = active_event[q];
      } else {
        suffix[q] = suffix[q + 1];
        if constexpr (kWitness) suffix_event[q] = suffix_event[q + 1];
      }
    }

    total_at[t] = 1 + suffix[t + 1];
    if constexpr (kWitness) next_at[t] = suffix_event[t + 1];
    tails.clear();
    tails.push_back(0);  // key of t itself; every later key is larger
    for (std::uint32_t q = t + 1; q < n; ++q) {
      const std::uint32_t x = val[q];
      if (x > v) continue;
      const std::uint32_t key = v - x;
      const std::size_t j = branchless_lower_bound(tails.data(), tails.size(), key);
      if (j == tails.size()) {
        tails.push_back(key);
      } else {
        tails[j] = key;
      }
      total_at[q] = static_cast<std::uint32_t>(j) + 1 + suffix[q + 1];
      if constexpr (kWitness) next_at[q] = suffix_event[q + 1];
    }

    // Park prefix maxima over decreasing bottom value.
    std::uint32_t running = 0;
    for (std::uint32_t w = v + 1; w-- > 0;) {
      const std::uint32_t q = pos_of[w];
      if (q < t) continue;
      const std::uint32_t g = total_at[q];
      if (g <= running) continue;
      running = g;
      const std::int32_t id = static_cast<std::int32_t>(events.size());
      events.push_back({t, q, g, kWitness ? next_at[q] : kNone});
      if (w > 0) parked[w].push_back(id);
      if (g > best) {
        best = g;
        best_event = id;
      }
    }
  }

  if constexpr (kWitness) {
    witness->clear();
    for (std::int32_t id = best_event; id != kNone; id = events[static_cast<std::size_t>(id)].next) {
      const LayerEvent& e = events[static_cast<std::size_t>(id)];
      for (std::size_t q : layer_path(val, e.top, e.bottom)) witness->push_back(q + 1);
    }
  }
  return best;
}

class MaxPositionTree {
 public:
  explicit MaxPositionTree(std::size_t n) {
    size_ = 1;
    while (size_ < std::max<std::size_t>(n, 1)) size_ <<= 1;
    tree_.assign(2 * size_, 0);
  }

  // Positions arrive in increasing order, so the new one is the maximum on
  // the whole root path.
  void insert(std::size_t index, std::uint32_t position) {
    for (std::size_t i = index + size_; i > 0; i >>= 1) tree_[i] = position;
  }

  std::uint32_t position(std::size_t index) const { return tree_[index + size_]; }

  // Smallest index >= from whose stored position exceeds `after`, or npos.
  std::size_t first_after(std::size_t from, std::uint32_t after) const {
    if (from >= size_) return npos;
    std::size_t i = from + size_;
    for (;;) {
      if (tree_[i] > after) break;
      while (i & 1) i >>= 1;
      if (i == 0) return npos;
      ++i;
    }
    while (i < size_) {
      i <<= 1;
      if (tree_[i] <= after) ++i;
    }
    return i - size_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t size_;
  std::vector<std::uint32_t> tree_;
};

struct HistoryEntry {
  std::uint32_t time;   // 1-based position at which T[l] took this value
  std::uint32_t value;  // 0 stands for "below everything"
  std::int32_t record;
};

struct BlockRecord {
  std::uint32_t last;  // 1-based position of the block's last entry
  std::uint32_t top;   // 1-based position of a pair's first entry, 0 for singletons
  std::int32_t prev;
};

template <bool kWitness>
std::size_t layered2_impl(const Permutation& p, std::vector<std::size_t>* witness) {
  const std::size_t n = p.size();
  if (n == 0) return 0;

  std::vector<std::uint32_t> best_top{0};
  std::vector<std::vector<HistoryEntry>> history{{{0, 0, kNone}}};
  std::vector<BlockRecord> records;
  MaxPositionTree seen(n);

  for (std::uint32_t i = 1; i <= n; ++i) {
    const std::uint32_t x = p[i - 1];
    const std::size_t l = static_cast<std::size_t>(
        std::upper_bound(best_top.begin(), best_top.end(), x) - best_top.begin() - 1);

    // Pair (a, x): a must follow the moment T[l] first dropped below x.
    const auto& hist = history[l];
    const auto first_below = std::partition_point(
        hist.begin(), hist.end(), [x](const HistoryEntry& h) { return h.value >= x; });
    const std::uint32_t since = first_below->time;
    const std::size_t a_index = seen.first_after(x, since);  // values are 1-based, index x is value x+1

    const std::int32_t cur_prev = history[l].back().record;

    // Singleton block {x} on top of length l.
    if (l + 1 == best_top.size()) {
      best_top.push_back(x);
      history.emplace_back();
    } else {
      best_top[l + 1] = x;
    }
    std::int32_t rec = kNone;
    if constexpr (kWitness) {
      rec = static_cast<std::int32_t>(records.size());
      records.push_back({i, 0, cur_prev});
    }
    history[l + 1].push_back({i, x, rec});

    if (a_index != MaxPositionTree::npos) {
      const std::uint32_t a_value = static_cast<std::uint32_t>(a_index + 1);
      if (l + 2 == best_top.size()) {
        best_top.push_back(a_value);
        history.emplace_back();
      } else if (a_value < best_top[l + 2]) {
        best_top[l + 2] = a_value;
      } else {
        seen.insert(x - 1, i);
        continue;
      }
      std::int32_t pair_rec = kNone;
      if constexpr (kWitness) {
        const std::uint32_t a_pos = seen.position(a_index);
        const auto& h = history[l];
        const auto before =
            std::partition_point(h.begin(), h.end(), [a_pos](const HistoryEntry& e) { return e.time < a_pos; });
        pair_rec = static_cast<std::int32_t>(records.size());
        records.push_back({i, a_pos, std::prev(before)->record});
      }
      history[l + 2].push_back({i, a_value, pair_rec});
    }
    seen.insert(x - 1, i);
  }

  const std::size_t length = best_top.size() - 1;
  if constexpr (kWitness) {
    witness->clear();
    for (std::int32_t r = history[length].back().record; r != kNone; r = records[static_cast<std::size_t>(r)].prev) {
      const BlockRecord& b = records[static_cast<std::size_t>(r)];
      witness->push_back(b.last);
      if (b.top) witness->push_back(b.top);
    }
    std::sort(witness->begin(), witness->end());
  }
  return length;
}

}  // namespace

SolverResult lps_layered(const Permutation& p) {
  SolverResult r;
  r.length = layered_impl<true>(p, &r.witness);
  return r;
}

std::size_t lps_layered_length(const Permutation& p) { return layered_impl<false>(p, nullptr); }

SolverResult lps_layered2(const Permutation& p) {
  SolverResult r;
  r.length = layered2_impl<true>(p, &r.witness);
  return r;
}

std::size_t lps_layered2_length(const Permutation& p) { return layered2_impl<false>(p, nullptr); }

}  // namespace permlab
