#include "solvers.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>

namespace permlab {

namespace {

std::vector<std::size_t> to_one_based(std::vector<std::size_t> positions) {
  for (auto& q : positions) ++q;
  return positions;
}

// LIS over an index subset of p, returning 0-based positions.
std::vector<std::size_t> lis_positions(const Permutation& p, std::span<const std::size_t> indices) {
  std::vector<Value> tails;
  std::vector<std::size_t> tail_at;
  std::vector<std::ptrdiff_t> pred(indices.size(), -1);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Value x = p[indices[k]];
    const auto it = std::lower_bound(tails.begin(), tails.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - tails.begin());
    if (j > 0) pred[k] = static_cast<std::ptrdiff_t>(tail_at[j - 1]);
    if (j == tails.size()) {
      tails.push_back(x);
      tail_at.push_back(k);
    } else {
      tails[j] = x;
      tail_at[j] = k;
    }
  }
  std::vector<std::size_t> out;
  if (tails.empty()) return out;
  for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(tail_at.back()); k >= 0; k = pred[static_cast<std::size_t>(k)]) {
    out.push_back(indices[static_cast<std::size_t>(k)]);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Maximum union of `chains` disjoint increasing subsequences via successive
// shortest paths on the split-node DAG. Returns 0-based positions.
std::vector<std::size_t> chain_union_by_flow(const Permutation& p, std::size_t chains) {
  const std::size_t n = p.size();
  struct Edge {
    std::uint32_t to;
    std::int32_t cap;
    std::int32_t cost;
    std::uint32_t rev;
  };
  const std::size_t nodes = 2 * n + 2;
  const std::uint32_t source = static_cast<std::uint32_t>(2 * n);
  const std::uint32_t sink = source + 1;
  std::vector<std::vector<Edge>> g(nodes);
  auto add = [&](std::uint32_t u, std::uint32_t v, std::int32_t cost) {
    g[u].push_back({v, 1, cost, static_cast<std::uint32_t>(g[v].size())});
    g[v].push_back({u, 0, -cost, static_cast<std::uint32_t>(g[u].size() - 1)});
  };
  auto in = [](std::size_t i) { return static_cast<std::uint32_t>(2 * i); };
  auto out = [](std::size_t i) { return static_cast<std::uint32_t>(2 * i + 1); };
  for (std::size_t i = 0; i < n; ++i) {
    add(source, in(i), 0);
    add(in(i), out(i), -1);
    add(out(i), sink, 0);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p[i] < p[j]) add(out(i), in(j), 0);
    }
  }

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // Initial potentials: the graph is a DAG in node order in(0) < out(0) < in(1) ...
  std::vector<std::int64_t> pot(nodes, kInf);
  pot[source] = 0;
  for (const Edge& e : g[source]) pot[e.to] = std::min(pot[e.to], pot[source] + e.cost);
  for (std::uint32_t u = 0; u < 2 * n; ++u) {
    if (pot[u] == kInf) continue;
    for (const Edge& e : g[u]) {
      if (e.cap > 0 && e.to != source) pot[e.to] = std::min(pot[e.to], pot[u] + e.cost);
    }
  }
  for (auto& x : pot) {
    if (x == kInf) x = 0;
  }

  std::vector<std::int64_t> dist(nodes);
  std::vector<std::uint32_t> prev_node(nodes), prev_edge(nodes);
  for (std::size_t unit = 0; unit < chains; ++unit) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0;
    using Item = std::pair<std::int64_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, source});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d != dist[u]) continue;
      for (std::uint32_t k = 0; k < g[u].size(); ++k) {
        const Edge& e = g[u][k];
        if (e.cap <= 0) continue;
        const std::int64_t nd = d + e.cost + pot[u] - pot[e.to];
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          prev_node[e.to] = u;
          prev_edge[e.to] = k;
          pq.push({nd, e.to});
        }
      }
    }
    if (dist[sink] == kInf) break;
    const std::int64_t path_cost = dist[sink] - pot[source] + pot[sink];
    if (path_cost >= 0) break;
    for (std::size_t u = 0; u < nodes; ++u) {
      if (dist[u] < kInf) pot[u] += dist[u];
    }
    for (std::uint32_t v = sink; v != source; v = prev_node[v]) {
      Edge& e = g[prev_node[v]][prev_edge[v]];
      e.cap -= 1;
      g[v][e.rev].cap += 1;
    }
  }
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Edge& e : g[in(i)]) {
      if (e.to == out(i) && e.cost == -1 && e.cap == 0) used.push_back(i);
    }
  }
  return used;
}

}  // namespace

SolverResult lps_oracle(const Permutation& p, const PatternClass& c, const SolverLimits& limits) {
  const std::size_t n = p.size();
  const std::size_t limit = std::min<std::size_t>(limits.oracle_max, 62);
  if (n > limit) {
    throw ResourceLimit("oracle limited to length " + std::to_string(limit) + ", got " +
                        std::to_string(n));
  }
  std::vector<std::size_t> combo;
  std::vector<Value> sub;
  for (std::size_t k = n; k > 0; --k) {
    combo.resize(k);
    for (std::size_t i = 0; i < k; ++i) combo[i] = i;
    for (;;) {
      // Rank-compress by counting smaller chosen values.
      std::uint64_t mask = 0;
      for (std::size_t i : combo) mask |= std::uint64_t{1} << p[i];
      sub.resize(k);
      for (std::size_t i = 0; i < k; ++i) {
        sub[i] = static_cast<Value>(std::popcount(mask & ((std::uint64_t{1} << p[combo[i]]) - 1)) + 1);
      }
      if (member(c, Permutation::from_unchecked(sub), limits.membership)) {
        return {k, to_one_based(combo)};
      }
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && combo[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++combo[i - 1];
      for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
    }
  }
  return {};
}

SolverResult lis(const Permutation& p) {
  std::vector<std::size_t> all(p.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto pos = lis_positions(p, all);
  return {pos.size(), to_one_based(std::move(pos))};
}

std::size_t lis_length(const Permutation& p) {
  std::vector<Value> tails;
  for (Value x : p) {
    const auto it = std::lower_bound(tails.begin(), tails.end(), x);
    if (it == tails.end()) {
      tails.push_back(x);
    } else {
      *it = x;
    }
  }
  return tails.size();
}

std::vector<std::size_t> rsk_row_lengths(const Permutation& p, std::size_t rows) {
  std::vector<std::vector<Value>> tableau(rows);
  for (Value x : p) {
    Value carry = x;
    for (std::size_t r = 0; r < rows; ++r) {
      auto& row = tableau[r];
      const auto it = std::upper_bound(row.begin(), row.end(), carry);
      if (it == row.end()) {
        row.push_back(carry);
        break;
      }
      std::swap(*it, carry);
    }
  }
  std::vector<std::size_t> lengths;
  for (const auto& row : tableau) lengths.push_back(row.size());
  return lengths;
}

std::size_t greene_length(const Permutation& p, std::size_t k) {
  if (k < 2) throw InvalidInput("greene: k must be at least 2");
  std::size_t total = 0;
  for (std::size_t len : rsk_row_lengths(p, k - 1)) total += len;
  return total;
}

SolverResult greene(const Permutation& p, std::size_t k, const SolverLimits& limits) {
  const std::size_t length = greene_length(p, k);
  // Greedy: peel off k-1 longest increasing subsequences.
  std::vector<std::size_t> remaining(p.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  std::vector<std::size_t> chosen;
  for (std::size_t round = 0; round + 1 < k && !remaining.empty(); ++round) {
    const auto chain = lis_positions(p, remaining);
    chosen.insert(chosen.end(), chain.begin(), chain.end());
    std::vector<std::size_t> rest;
    std::set_difference(remaining.begin(), remaining.end(), chain.begin(), chain.end(), std::back_inserter(rest));
    remaining = std::move(rest);
  }
  if (chosen.size() != length) {
    if (p.size() > limits.greene_witness_max) {
      throw ResourceLimit("greene witness: greedy cover fell short and exact recovery is limited to length " +
                          std::to_string(limits.greene_witness_max));
    }
    chosen = chain_union_by_flow(p, k - 1);
    if (chosen.size() != length) throw std::logic_error("greene witness: flow disagrees with tableau");
  }
  std::sort(chosen.begin(), chosen.end());
  return {length, to_one_based(std::move(chosen))};
}

std::size_t lps_monotone_inc_length(const Permutation& p, std::size_t k) { return greene_length(reverse(p), k); }

SolverResult lps_monotone_inc(const Permutation& p, std::size_t k, const SolverLimits& limits) {
  SolverResult r = greene(reverse(p), k, limits);
  const std::size_t n = p.size();
  for (auto& q : r.witness) q = n + 1 - q;
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

}  // namespace permlab
