#include "permutation.hpp"

#include <charconv>
#include <limits>

namespace permlab {

Permutation::Permutation(std::vector<Value> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  std::vector<bool> seen(n + 1, false);
  for (Value v : values_) {
    if (v < 1 || v > n) {
      throw InvalidInput("not a permutation: value " + std::to_string(v) +
                         " outside 1.." + std::to_string(n));
    }
    if (seen[v]) throw InvalidInput("not a permutation: repeated value " + std::to_string(v));
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Value> v(n);
  std::iota(v.begin(), v.end(), Value{1});
  return from_unchecked(std::move(v));
}

Permutation Permutation::decreasing(std::size_t n) {
  std::vector<Value> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Value>(n - i);
  return from_unchecked(std::move(v));
}

Permutation pattern_at(const Permutation& p, std::span<const std::size_t> positions) {
  std::vector<Value> sub;
  sub.reserve(positions.size());
  for (std::size_t i : positions) sub.push_back(p[i]);
  return pattern_of(std::span<const Value>(sub));
}

namespace {

// For each index j of q, the index (among q_0..q_{j-1}) holding the largest
// value below q_j and the smallest value above q_j, or -1.
struct Neighbours {
  std::vector<int> below;
  std::vector<int> above;
};

Neighbours neighbours_of(const Permutation& q) {
  const std::size_t k = q.size();
  Neighbours nb{std::vector<int>(k, -1), std::vector<int>(k, -1)};
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t s = 0; s < j; ++s) {
      if (q[s] < q[j] && (nb.below[j] < 0 || q[s] > q[nb.below[j]])) nb.below[j] = static_cast<int>(s);
      if (q[s] > q[j] && (nb.above[j] < 0 || q[s] < q[nb.above[j]])) nb.above[j] = static_cast<int>(s);
    }
  }
  return nb;
}

bool embed(std::span<const Value> p, const Permutation& q, const Neighbours& nb,
           std::vector<Value>& chosen, std::size_t j, std::size_t start) {
  const std::size_t k = q.size();
  if (j == k) return true;
  const Value lo = nb.below[j] >= 0 ? chosen[nb.below[j]] : 0;
  const Value hi = nb.above[j] >= 0 ? chosen[nb.above[j]] : std::numeric_limits<Value>::max();
  // Leave room for the remaining k - j - 1 entries.
  const std::size_t last = p.size() - (k - j - 1);
  for (std::size_t i = start; i < last; ++i) {
    const Value v = p[i];
    if (v <= lo || v >= hi) continue;
    chosen[j] = v;
    if (embed(p, q, nb, chosen, j + 1, i + 1)) return true;
  }
  return false;
}

}  // namespace

bool involves(const Permutation& p, const Permutation& q) {
  if (q.size() > p.size()) return false;
  if (q.empty()) return true;
  const Neighbours nb = neighbours_of(q);
  std::vector<Value> chosen(q.size());
  return embed(p.values(), q, nb, chosen, 0, 0);
}

bool involves_at_end(std::span<const Value> p, const Permutation& q) {
  const std::size_t k = q.size();
  if (k == 0) return true;
  if (k > p.size()) return false;
  const Neighbours nb = neighbours_of(q);
  // Fix the last entry first by matching the prefix q_0..q_{k-2} inside
  // p_0..p_{n-2}, then checking the final entry's value window.
  std::vector<Value> chosen(k);
  const Value last = p.back();
  const std::span<const Value> head = p.first(p.size() - 1);

  struct Walker {
    std::span<const Value> head;
    const Permutation& q;
    const Neighbours& nb;
    std::vector<Value>& chosen;
    Value last;
    bool run(std::size_t j, std::size_t start) {
      const std::size_t k = q.size();
      if (j == k - 1) {
        const Value lo = nb.below[j] >= 0 ? chosen[nb.below[j]] : 0;
        const Value hi = nb.above[j] >= 0 ? chosen[nb.above[j]] : std::numeric_limits<Value>::max();
        return last > lo && last < hi;
      }
      const Value lo = nb.below[j] >= 0 ? chosen[nb.below[j]] : 0;
      const Value hi = nb.above[j] >= 0 ? chosen[nb.above[j]] : std::numeric_limits<Value>::max();
      const std::size_t stop = head.size() - (k - 2 - j);
      for (std::size_t i = start; i < stop; ++i) {
        const Value v = head[i];
        if (v <= lo || v >= hi) continue;
        // The final entry's relation to v is fixed by q; prune early.
        if ((q[j] < q[k - 1]) != (v < last)) continue;
        chosen[j] = v;
        if (run(j + 1, i + 1)) return true;
      }
      return false;
    }
  };
  Walker w{head, q, nb, chosen, last};
  return w.run(0, 0);
}

Permutation direct_sum(const Permutation& a, const Permutation& b) {
  std::vector<Value> v(a.begin(), a.end());
  const Value shift = static_cast<Value>(a.size());
  for (Value x : b) v.push_back(x + shift);
  return Permutation::from_unchecked(std::move(v));
}

Permutation skew_sum(const Permutation& a, const Permutation& b) {
  std::vector<Value> v;
  v.reserve(a.size() + b.size());
  const Value shift = static_cast<Value>(b.size());
  for (Value x : a) v.push_back(x + shift);
  v.insert(v.end(), b.begin(), b.end());
  return Permutation::from_unchecked(std::move(v));
}

Permutation rotate(const Permutation& p, std::size_t k) {
  std::vector<Value> v(p.begin(), p.end());
  if (!v.empty()) std::rotate(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k % v.size()), v.end());
  return Permutation::from_unchecked(std::move(v));
}

std::vector<Permutation> cyclic_rotations(const Permutation& p) {
  if (p.empty()) throw InvalidInput("cyclic_rotations: empty permutation");
  std::vector<Permutation> out;
  out.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) out.push_back(rotate(p, k));
  return out;
}

Permutation reverse(const Permutation& p) {
  std::vector<Value> v(p.begin(), p.end());
  std::reverse(v.begin(), v.end());
  return Permutation::from_unchecked(std::move(v));
}

Permutation complement(const Permutation& p) {
  const Value top = static_cast<Value>(p.size() + 1);
  std::vector<Value> v;
  v.reserve(p.size());
  for (Value x : p) v.push_back(top - x);
  return Permutation::from_unchecked(std::move(v));
}

Permutation inverse(const Permutation& p) {
  std::vector<Value> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) v[p[i] - 1] = static_cast<Value>(i + 1);
  return Permutation::from_unchecked(std::move(v));
}

Symmetries symmetries(const Permutation& p) { return {reverse(p), complement(p), inverse(p)}; }

bool is_increasing(const Permutation& p) { return std::is_sorted(p.begin(), p.end()); }

bool is_decreasing(const Permutation& p) {
  return std::is_sorted(p.begin(), p.end(), std::greater<>{});
}

Permutation parse_permutation(std::string_view line) {
  std::vector<Value> values;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
      ++i;
      continue;
    }
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc{} || ptr == line.data() + i) {
      throw InvalidInput("bad permutation token near '" + std::string(line.substr(i, 8)) + "'");
    }
    if (v > std::numeric_limits<Value>::max()) throw InvalidInput("permutation value too large");
    values.push_back(static_cast<Value>(v));
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return Permutation(std::move(values));
}

std::string format_permutation(const Permutation& p, char sep) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out.push_back(sep);
    out += std::to_string(p[i]);
  }
  return out;
}

std::string compact_form(const Permutation& p) {
  if (p.size() <= 9) {
    std::string out;
    for (Value v : p) out.push_back(static_cast<char>('0' + v));
    return out;
  }
  return "[" + format_permutation(p) + "]";
}

}  // namespace permlab
