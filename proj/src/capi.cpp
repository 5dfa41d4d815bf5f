#include "permlab/permlab.h"

#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "enumerate.hpp"
#include "experiment.hpp"
#include "solvers.hpp"

struct plab_perm {
  permlab::Permutation value;
};

struct plab_class {
  permlab::PatternClass value;
  std::string text;
  std::string citation;
};

struct plab_solver {
  permlab::Solver value;
};

struct plab_experiment {
  std::vector<permlab::SampleStats> rows;
};

struct plab_table {
  permlab::TableReport report;
};

namespace {

thread_local std::string last_error;

plab_status fail(plab_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, mapping library exceptions onto status codes.
template <class Body>
plab_status guarded(Body&& body) {
  try {
    body();
    last_error.clear();
    return PLAB_OK;
  } catch (const permlab::InvalidInput& e) {
    return fail(PLAB_INVALID_INPUT, e.what());
  } catch (const permlab::ResourceLimit& e) {
    return fail(PLAB_RESOURCE_LIMIT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PLAB_RESOURCE_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(PLAB_INTERNAL, e.what());
  } catch (...) {
    return fail(PLAB_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw permlab::InvalidInput(what);
}

permlab::SolverLimits solver_limits(const plab_limits* l) {
  permlab::SolverLimits out;
  if (l) {
    out.oracle_max = l->oracle_max;
    out.sum_max = l->sum_max;
    out.greene_witness_max = l->greene_witness_max;
    out.membership.merge_max = l->merge_max;
  }
  return out;
}

permlab::CountOptions count_options(const plab_limits* l, unsigned threads) {
  permlab::CountOptions out;
  if (l) {
    out.leaf_max = l->count_leaf_max;
    out.composite_max = l->count_composite_max;
    out.membership.merge_max = l->merge_max;
  }
  out.threads = threads == 0 ? 1 : threads;
  return out;
}

plab_status rung_status(const permlab::SampleStats& s) {
  if (s.error.empty()) return PLAB_OK;
  return s.resource_limited ? PLAB_RESOURCE_LIMIT : PLAB_INTERNAL;
}

plab_sample_stats to_c(const permlab::SampleStats& s) {
  return {s.n, s.samples, s.mean, s.stddev, s.c_hat, s.master_seed, s.stream_id, s.wall_time_s, rung_status(s)};
}

const uint32_t* lengths_of(const permlab::SampleStats& s, size_t* count) {
  if (count) *count = s.lengths.size();
  return s.lengths.empty() ? nullptr : s.lengths.data();
}

}  // namespace

extern "C" {

const char* plab_version(void) { return PERMLAB_VERSION; }

const char* plab_last_error(void) { return last_error.c_str(); }

void plab_default_limits(plab_limits* out) {
  if (!out) return;
  const permlab::SolverLimits s;
  const permlab::CountOptions c;
  *out = {s.oracle_max, s.sum_max, s.greene_witness_max, s.membership.merge_max, c.leaf_max, c.composite_max};
}

plab_status plab_perm_parse(const char* text, plab_perm** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = new plab_perm{permlab::parse_permutation(text)};
  });
}

plab_status plab_perm_from_values(const uint32_t* values, size_t n, plab_perm** out) {
  return guarded([&] {
    require(out && (values || n == 0), "null argument");
    *out = new plab_perm{permlab::Permutation(std::vector<permlab::Value>(values, values + n))};
  });
}

plab_status plab_perm_random(size_t n, uint64_t seed, plab_perm** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    permlab::Rng rng(seed);
    *out = new plab_perm{permlab::random_permutation(n, rng)};
  });
}

size_t plab_perm_size(const plab_perm* p) { return p ? p->value.size() : 0; }

const uint32_t* plab_perm_values(const plab_perm* p) {
  return p && !p->value.empty() ? p->value.values().data() : nullptr;
}

void plab_perm_free(plab_perm* p) { delete p; }

plab_status plab_class_parse(const char* expr, plab_class** out) {
  return guarded([&] {
    require(expr && out, "null argument");
    permlab::PatternClass c = permlab::parse_class(expr);
    std::string text = c.to_string();
    *out = new plab_class{std::move(c), std::move(text), {}};
  });
}

const char* plab_class_describe(const plab_class* c) { return c ? c->text.c_str() : ""; }

plab_status plab_class_member(const plab_class* c, const plab_perm* p, const plab_limits* limits, int* out) {
  return guarded([&] {
    require(c && p && out, "null argument");
    *out = permlab::member(c->value, p->value, solver_limits(limits).membership) ? 1 : 0;
  });
}

plab_status plab_class_known_limit(const plab_class* c, int* has_known, double* value, const char** citation) {
  return guarded([&] {
    require(c && has_known, "null argument");
    const auto known = permlab::known_limit(c->value);
    *has_known = known ? 1 : 0;
    if (known) {
      // The citation string lives in the handle.
      const_cast<plab_class*>(c)->citation = known->citation;
      if (value) *value = known->value;
      if (citation) *citation = c->citation.c_str();
    }
  });
}

void plab_class_free(plab_class* c) { delete c; }

plab_status plab_count_avoiders(const plab_class* c, size_t max_n, unsigned threads, const plab_limits* limits,
                                uint64_t* counts) {
  return guarded([&] {
    require(c && counts, "null argument");
    const auto cs = permlab::count_avoiders(c->value, max_n, count_options(limits, threads));
    std::copy(cs.counts.begin(), cs.counts.end(), counts);
  });
}

plab_status plab_sw_estimate(const uint64_t* counts, size_t len, double* roots, double* ratios) {
  return guarded([&] {
    require(counts && roots && (ratios || len < 2), "null argument");
    // The class only feeds the literature lookup, which callers get from
    // plab_class_known_limit.
    const permlab::CountSequence cs{permlab::parse_class("av(21)"), {counts, counts + len}, true};
    const auto est = permlab::sw_estimate(cs);
    std::copy(est.roots.begin(), est.roots.end(), roots);
    for (size_t i = 0; i < est.ratios.size(); ++i) {
      ratios[i] = est.ratios[i] ? *est.ratios[i] : std::numeric_limits<double>::quiet_NaN();
    }
  });
}

plab_status plab_solver_create(const plab_class* c, const char* selector, const plab_limits* limits,
                               plab_solver** out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = new plab_solver{permlab::make_solver(c->value, selector ? selector : "auto", solver_limits(limits))};
  });
}

const char* plab_solver_name(const plab_solver* s) { return s ? s->value.name().c_str() : ""; }

plab_status plab_solve(const plab_solver* s, const plab_perm* p, size_t* length, size_t* witness) {
  return guarded([&] {
    require(s && p && length, "null argument");
    const permlab::SolverResult r = s->value.solve(p->value);
    *length = r.length;
    if (witness) std::copy(r.witness.begin(), r.witness.end(), witness);
  });
}

plab_status plab_solve_length(const plab_solver* s, const plab_perm* p, size_t* length) {
  return guarded([&] {
    require(s && p && length, "null argument");
    *length = s->value.length(p->value);
  });
}

void plab_solver_free(plab_solver* s) { delete s; }

plab_status plab_merge_bounds(const plab_solver* a, const plab_solver* b, const plab_perm* p, int64_t overlap_cap,
                              size_t* lower, size_t* upper) {
  return guarded([&] {
    require(a && b && p && lower && upper, "null argument");
    const auto r = permlab::lps_merge_bounds(p->value, a->value, b->value, overlap_cap);
    *lower = r.lower;
    *upper = r.upper;
  });
}

plab_status plab_experiment_run(const plab_experiment_config* cfg, plab_experiment** out) {
  return guarded([&] {
    require(cfg && out && cfg->class_expr, "null argument");
    require(cfg->lengths || cfg->num_lengths == 0, "null argument");
    permlab::ExperimentConfig ec;
    ec.class_expr = cfg->class_expr;
    ec.lengths.assign(cfg->lengths, cfg->lengths + cfg->num_lengths);
    ec.samples_per_length = cfg->samples;
    ec.master_seed = cfg->master_seed;
    ec.solver = cfg->solver ? cfg->solver : "auto";
    ec.threads = cfg->threads == 0 ? 1 : cfg->threads;
    ec.limits = solver_limits(cfg->limits);
    *out = new plab_experiment{permlab::run_experiment(ec)};
  });
}

size_t plab_experiment_rows(const plab_experiment* e) { return e ? e->rows.size() : 0; }

plab_status plab_experiment_row(const plab_experiment* e, size_t i, plab_sample_stats* out) {
  return guarded([&] {
    require(e && out, "null argument");
    require(i < e->rows.size(), "row index out of range");
    *out = to_c(e->rows[i]);
  });
}

const char* plab_experiment_error(const plab_experiment* e, size_t i) {
  return e && i < e->rows.size() ? e->rows[i].error.c_str() : "";
}

const uint32_t* plab_experiment_lengths(const plab_experiment* e, size_t i, size_t* count) {
  if (!e || i >= e->rows.size()) {
    if (count) *count = 0;
    return nullptr;
  }
  return lengths_of(e->rows[i], count);
}

void plab_experiment_free(plab_experiment* e) { delete e; }

plab_status plab_check_concentration(const uint32_t* lengths, size_t count, size_t n, double alpha, double beta,
                                     plab_concentration* out) {
  return guarded([&] {
    require(out && (lengths || count == 0), "null argument");
    const auto r = permlab::check_concentration({lengths, count}, n, alpha, beta);
    *out = {r.n,          r.samples,         r.alpha,         r.beta,  r.deviation,
            r.empirical_tail, r.adjusted_tail, r.bound, r.log_bound, r.satisfied ? 1 : 0};
  });
}

plab_status plab_check_tail(const uint32_t* lengths, size_t count, size_t n, double s, plab_tail* out) {
  return guarded([&] {
    require(out && (lengths || count == 0), "null argument");
    const auto r = permlab::check_tail_bound({lengths, count}, n, s);
    *out = {r.n, r.samples, r.s, r.threshold, r.empirical_exceed, r.bound, r.log_bound, r.max_observed,
            r.vacuous ? 1 : 0};
  });
}

plab_status plab_default_tail_s(const plab_class* c, const plab_limits* limits, double* out) {
  return guarded([&] {
    require(c && out, "null argument");
    *out = permlab::default_tail_s(c->value, count_options(limits, 1));
  });
}

plab_status plab_table_run(const plab_table_config* cfg, plab_table** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    require(cfg->table == PLAB_TABLE_L2 || cfg->table == PLAB_TABLE_L, "unknown table");
    permlab::TableConfig tc;
    tc.table = cfg->table == PLAB_TABLE_L2 ? permlab::TableId::L2 : permlab::TableId::L;
    tc.scale = cfg->scale;
    tc.rungs = cfg->rungs;
    tc.master_seed = cfg->master_seed;
    tc.solver = cfg->solver ? cfg->solver : "auto";
    tc.threads = cfg->threads == 0 ? 1 : cfg->threads;
    tc.limits = solver_limits(cfg->limits);
    *out = new plab_table{permlab::reproduce_table(tc)};
  });
}

const char* plab_table_class(const plab_table* t) { return t ? t->report.class_expr.c_str() : ""; }

size_t plab_table_samples(const plab_table* t) { return t ? t->report.samples : 0; }

size_t plab_table_rows(const plab_table* t) { return t ? t->report.rows.size() : 0; }

plab_status plab_table_row_get(const plab_table* t, size_t i, plab_table_row* out) {
  return guarded([&] {
    require(t && out, "null argument");
    require(i < t->report.rows.size(), "row index out of range");
    const auto& row = t->report.rows[i];
    *out = {row.paper.n,       row.paper.mean, row.paper.stddev,   row.paper.c_hat,
            to_c(row.observed), row.z_mean,    row.skipped ? 1 : 0};
  });
}

const char* plab_table_error(const plab_table* t, size_t i) {
  return t && i < t->report.rows.size() ? t->report.rows[i].observed.error.c_str() : "";
}

const uint32_t* plab_table_lengths(const plab_table* t, size_t i, size_t* count) {
  if (!t || i >= t->report.rows.size()) {
    if (count) *count = 0;
    return nullptr;
  }
  return lengths_of(t->report.rows[i].observed, count);
}

void plab_table_free(plab_table* t) { delete t; }

}  // extern "C"
