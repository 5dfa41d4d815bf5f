#include <algorithm>

#include "solvers.hpp"

namespace permlab {

namespace {

Permutation pattern_of_values(const std::vector<Value>& values) {
  return pattern_of(std::span<const Value>(values));
}

struct Cut {
  std::size_t total = 0;
  std::size_t t = 0;
  Value v = 0;
};

// Corner cuts worth trying: moving the cut right or up past an entry that
// would only leave the upper part is dominated by not moving.
template <class Visit>
void for_each_corner_cut(const Permutation& p, Visit&& visit) {
  const std::size_t n = p.size();
  std::vector<std::size_t> pos_of(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) pos_of[p[i]] = i;
  std::vector<Value> lower, upper;
  for (std::size_t t = 0; t <= n; ++t) {
    for (Value v = 0; v <= n; ++v) {
      if (t > 0 && p[t - 1] > v) continue;
      if (v > 0 && pos_of[v] >= t) continue;
      lower.clear();
      upper.clear();
      for (std::size_t i = 0; i < t; ++i) {
        if (p[i] <= v) lower.push_back(p[i]);
      }
      for (std::size_t i = t; i < n; ++i) {
        if (p[i] > v) upper.push_back(p[i]);
      }
      visit(t, v, lower, upper);
    }
  }
}

Cut best_corner_cut(const Permutation& p, const Solver& a, const Solver& b, const SolverLimits& limits) {
  if (p.size() > limits.sum_max) {
    throw ResourceLimit("sum solver limited to length " + std::to_string(limits.sum_max) + ", got " +
                        std::to_string(p.size()));
  }
  Cut best;
  bool first = true;
  for_each_corner_cut(p, [&](std::size_t t, Value v, const std::vector<Value>& lo, const std::vector<Value>& hi) {
    if (!first && lo.size() + hi.size() <= best.total) return;
    const std::size_t total = a.length(pattern_of_values(lo)) + b.length(pattern_of_values(hi));
    if (first || total > best.total) best = {total, t, v};
    first = false;
  });
  return best;
}

Permutation prefix_pattern(const Permutation& p, std::size_t t) { return pattern_of(p.values().first(t)); }
Permutation suffix_pattern(const Permutation& p, std::size_t t) { return pattern_of(p.values().subspan(t)); }

}  // namespace

std::size_t lps_union_length(const Permutation& p, const Solver& a, const Solver& b) {
  return std::max(a.length(p), b.length(p));
}

SolverResult lps_union(const Permutation& p, const Solver& a, const Solver& b) {
  SolverResult ra = a.solve(p);
  SolverResult rb = b.solve(p);
  return rb.length > ra.length ? rb : ra;
}

std::size_t lps_juxt_length(const Permutation& p, const Solver& a, const Solver& b) {
  std::size_t best = 0;
  for (std::size_t t = 0; t <= p.size(); ++t) {
    best = std::max(best, a.length(prefix_pattern(p, t)) + b.length(suffix_pattern(p, t)));
  }
  return best;
}

SolverResult lps_juxt(const Permutation& p, const Solver& a, const Solver& b) {
  std::size_t best = 0;
  std::size_t best_t = 0;
  for (std::size_t t = 0; t <= p.size(); ++t) {
    const std::size_t total = a.length(prefix_pattern(p, t)) + b.length(suffix_pattern(p, t));
    if (total > best) {
      best = total;
      best_t = t;
    }
  }
  SolverResult left = a.solve(prefix_pattern(p, best_t));
  SolverResult right = b.solve(suffix_pattern(p, best_t));
  SolverResult r{left.length + right.length, std::move(left.witness)};
  for (std::size_t q : right.witness) r.witness.push_back(q + best_t);
  return r;
}

std::size_t lps_sum_class_length(const Permutation& p, const Solver& a, const Solver& b,
                                 const SolverLimits& limits) {
  return best_corner_cut(p, a, b, limits).total;
}

SolverResult lps_sum_class(const Permutation& p, const Solver& a, const Solver& b, const SolverLimits& limits) {
  const Cut cut = best_corner_cut(p, a, b, limits);
  std::vector<std::size_t> lo_pos, hi_pos;
  std::vector<Value> lo, hi;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i < cut.t && p[i] <= cut.v) {
      lo_pos.push_back(i);
      lo.push_back(p[i]);
    } else if (i >= cut.t && p[i] > cut.v) {
      hi_pos.push_back(i);
      hi.push_back(p[i]);
    }
  }
  const SolverResult left = a.solve(pattern_of_values(lo));
  const SolverResult right = b.solve(pattern_of_values(hi));
  SolverResult r{left.length + right.length, {}};
  for (std::size_t q : left.witness) r.witness.push_back(lo_pos[q - 1] + 1);
  for (std::size_t q : right.witness) r.witness.push_back(hi_pos[q - 1] + 1);
  return r;
}

std::size_t lps_rot_length(const Permutation& p, const Solver& a) {
  if (p.empty()) throw InvalidInput("rotation solver: empty permutation");
  std::size_t best = 0;
  for (std::size_t k = 0; k < p.size(); ++k) best = std::max(best, a.length(rotate(p, k)));
  return best;
}

SolverResult lps_rot(const Permutation& p, const Solver& a) {
  if (p.empty()) throw InvalidInput("rotation solver: empty permutation");
  const std::size_t n = p.size();
  std::size_t best = 0;
  std::size_t best_k = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t len = a.length(rotate(p, k));
    if (len > best) {
      best = len;
      best_k = k;
    }
  }
  SolverResult r = a.solve(rotate(p, best_k));
  for (auto& q : r.witness) q = (q - 1 + best_k) % n + 1;
  std::sort(r.witness.begin(), r.witness.end());
  return r;
}

MergeBounds lps_merge_bounds(const Permutation& p, const Solver& a, const Solver& b, std::int64_t overlap_cap) {
  if (overlap_cap < 0) throw InvalidInput("merge bounds: overlap cap must be non-negative");
  const std::size_t n = p.size();
  const std::size_t cap = static_cast<std::size_t>(overlap_cap);
  const std::size_t la = a.length(p);
  const std::size_t lb = b.length(p);
  const std::size_t sum = la + lb;
  std::size_t lower = std::max({la, lb, sum > cap ? sum - cap : std::size_t{0}});
  const std::size_t upper = std::min(sum, n);
  lower = std::min(lower, n);
  return {lower, upper, cap};
}

namespace {

bool basis_is(const PatternClass& c, std::initializer_list<const char*> elems) {
  if (!c.is_leaf() || c.basis().size() != elems.size()) return false;
  std::size_t i = 0;
  for (const char* e : elems) {
    if (compact_form(c.basis()[i++]) != e) return false;
  }
  return true;
}

// Av(k...1) -> k, else 0.
std::size_t decreasing_basis(const PatternClass& c) {
  if (!c.is_leaf() || c.basis().size() != 1 || !is_decreasing(c.basis().front())) return 0;
  return c.basis().front().size();
}

std::size_t increasing_basis(const PatternClass& c) {
  if (!c.is_leaf() || c.basis().size() != 1 || !is_increasing(c.basis().front())) return 0;
  return c.basis().front().size();
}

Solver oracle_solver(const PatternClass& c, const SolverLimits& limits) {
  return Solver("oracle", [c, limits](const Permutation& p) { return lps_oracle(p, c, limits); });
}

Solver named(const PatternClass& c, std::string_view selector, const SolverLimits& limits) {
  using Kind = PatternClass::Kind;
  const std::string sel(selector);
  const auto mismatch = [&]() -> Solver {
    throw InvalidInput("solver '" + sel + "' does not apply to class " + c.to_string());
  };
  if (sel == "oracle") return oracle_solver(c, limits);
  if (sel == "lis") {
    if (decreasing_basis(c) != 2) mismatch();
    return Solver("lis", [](const Permutation& p) { return lis(p); }, [](const Permutation& p) { return lis_length(p); });
  }
  if (sel == "greene") {
    const std::size_t k = decreasing_basis(c);
    if (k < 2) mismatch();
    return Solver(
        "greene", [k, limits](const Permutation& p) { return greene(p, k, limits); },
        [k](const Permutation& p) { return greene_length(p, k); });
  }
  if (sel == "monotone") {
    const std::size_t k = increasing_basis(c);
    if (k < 2) mismatch();
    return Solver(
        "monotone", [k, limits](const Permutation& p) { return lps_monotone_inc(p, k, limits); },
        [k](const Permutation& p) { return lps_monotone_inc_length(p, k); });
  }
  if (sel == "layered") {
    if (!basis_is(c, {"231", "312"})) mismatch();
    return Solver("layered", [](const Permutation& p) { return lps_layered(p); },
                  [](const Permutation& p) { return lps_layered_length(p); });
  }
  if (sel == "layered2") {
    if (!basis_is(c, {"231", "312", "321"})) mismatch();
    return Solver("layered2", [](const Permutation& p) { return lps_layered2(p); },
                  [](const Permutation& p) { return lps_layered2_length(p); });
  }
  if (sel == "union") {
    if (c.kind() != Kind::Union) mismatch();
    Solver a = make_solver(c.left(), "auto", limits);
    Solver b = make_solver(c.right(), "auto", limits);
    return Solver(
        "union(" + a.name() + "," + b.name() + ")", [a, b](const Permutation& p) { return lps_union(p, a, b); },
        [a, b](const Permutation& p) { return lps_union_length(p, a, b); });
  }
  if (sel == "juxt") {
    if (c.kind() != Kind::Juxtaposition) mismatch();
    Solver a = make_solver(c.left(), "auto", limits);
    Solver b = make_solver(c.right(), "auto", limits);
    return Solver(
        "juxt(" + a.name() + "," + b.name() + ")", [a, b](const Permutation& p) { return lps_juxt(p, a, b); },
        [a, b](const Permutation& p) { return lps_juxt_length(p, a, b); });
  }
  if (sel == "sum") {
    if (c.kind() != Kind::DirectSum) mismatch();
    Solver a = make_solver(c.left(), "auto", limits);
    Solver b = make_solver(c.right(), "auto", limits);
    return Solver(
        "sum(" + a.name() + "," + b.name() + ")",
        [a, b, limits](const Permutation& p) { return lps_sum_class(p, a, b, limits); },
        [a, b, limits](const Permutation& p) { return lps_sum_class_length(p, a, b, limits); });
  }
  if (sel == "rot") {
    if (c.kind() != Kind::Rotation) mismatch();
    Solver a = make_solver(c.left(), "auto", limits);
    return Solver(
        "rot(" + a.name() + ")", [a](const Permutation& p) { return lps_rot(p, a); },
        [a](const Permutation& p) { return lps_rot_length(p, a); });
  }
  throw InvalidInput("unknown solver '" + sel + "'");
}

}  // namespace

Solver make_solver(const PatternClass& c, std::string_view selector, const SolverLimits& limits) {
  using Kind = PatternClass::Kind;
  if (selector != "auto") return named(c, selector, limits);
  switch (c.kind()) {
    case Kind::Leaf:
      if (decreasing_basis(c) == 2) return named(c, "lis", limits);
      if (decreasing_basis(c) > 2) return named(c, "greene", limits);
      if (increasing_basis(c) >= 2) return named(c, "monotone", limits);
      if (basis_is(c, {"231", "312"})) return named(c, "layered", limits);
      if (basis_is(c, {"231", "312", "321"})) return named(c, "layered2", limits);
      return oracle_solver(c, limits);
    case Kind::Union: return named(c, "union", limits);
    case Kind::Juxtaposition: return named(c, "juxt", limits);
    case Kind::DirectSum: return named(c, "sum", limits);
    case Kind::Rotation: return named(c, "rot", limits);
    case Kind::Merge: return oracle_solver(c, limits);
  }
  return oracle_solver(c, limits);
}

}  // namespace permlab
