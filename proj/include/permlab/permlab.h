#ifndef PERMLAB_PERMLAB_H
#define PERMLAB_PERMLAB_H

/* C interface to permlab: longest pattern-avoiding subsequences, class
 * enumeration and seeded Monte Carlo experiments.
 *
 * Every fallible call returns a plab_status. On failure the reason is
 * available from plab_last_error() on the same thread until the next call.
 * Handles are opaque; each *_free accepts NULL. Strings returned by
 * accessors are owned by the handle they came from. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(PERMLAB_BUILDING)
#define PLAB_API __declspec(dllexport)
#else
#define PLAB_API __declspec(dllimport)
#endif
#else
#define PLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum plab_status {
  PLAB_OK = 0,
  PLAB_INVALID_INPUT = 1,
  PLAB_RESOURCE_LIMIT = 2,
  PLAB_INTERNAL = 3
} plab_status;

typedef struct plab_perm plab_perm;
typedef struct plab_class plab_class;
typedef struct plab_solver plab_solver;
typedef struct plab_experiment plab_experiment;
typedef struct plab_table plab_table;

/* Exhaustive-search limits. Fill with plab_default_limits, then adjust. */
typedef struct plab_limits {
  size_t oracle_max;          /* brute-force solver, default 16 */
  size_t sum_max;             /* direct-sum solver input length, default 500 */
  size_t greene_witness_max;  /* exact Greene witness recovery, default 2000 */
  size_t merge_max;           /* merge membership, default 14 */
  size_t count_leaf_max;      /* enumeration of basis classes, default 11 */
  size_t count_composite_max; /* enumeration of constructed classes, default 9 */
} plab_limits;

PLAB_API const char* plab_version(void);
PLAB_API const char* plab_last_error(void);
PLAB_API void plab_default_limits(plab_limits* out);

/* Permutations in one-line notation, values 1..n. */
PLAB_API plab_status plab_perm_parse(const char* text, plab_perm** out);
PLAB_API plab_status plab_perm_from_values(const uint32_t* values, size_t n, plab_perm** out);
/* Uniform permutation from a generator seeded with `seed`. */
PLAB_API plab_status plab_perm_random(size_t n, uint64_t seed, plab_perm** out);
PLAB_API size_t plab_perm_size(const plab_perm* p);
PLAB_API const uint32_t* plab_perm_values(const plab_perm* p);
PLAB_API void plab_perm_free(plab_perm* p);

/* Classes in the mini-language, e.g. "av(231,312)" or "union(av(21),av(12))". */
PLAB_API plab_status plab_class_parse(const char* expr, plab_class** out);
PLAB_API const char* plab_class_describe(const plab_class* c);
PLAB_API plab_status plab_class_member(const plab_class* c, const plab_perm* p, const plab_limits* limits,
                                       int* out);
/* *has_known is 0 when no literature value exists. */
PLAB_API plab_status plab_class_known_limit(const plab_class* c, int* has_known, double* value,
                                            const char** citation);
PLAB_API void plab_class_free(plab_class* c);

/* counts[i] receives the number of members of length i + 1, for i < max_n. */
PLAB_API plab_status plab_count_avoiders(const plab_class* c, size_t max_n, unsigned threads,
                                         const plab_limits* limits, uint64_t* counts);

/* roots has `len` slots, ratios `len - 1`; an undefined ratio is NaN. */
PLAB_API plab_status plab_sw_estimate(const uint64_t* counts, size_t len, double* roots, double* ratios);

/* selector: "auto", "oracle", or a named algorithm fitting the class. */
PLAB_API plab_status plab_solver_create(const plab_class* c, const char* selector, const plab_limits* limits,
                                        plab_solver** out);
PLAB_API const char* plab_solver_name(const plab_solver* s);
/* witness, when non-NULL, needs room for plab_perm_size(p) entries and
 * receives strictly increasing 1-based positions. */
PLAB_API plab_status plab_solve(const plab_solver* s, const plab_perm* p, size_t* length, size_t* witness);
PLAB_API plab_status plab_solve_length(const plab_solver* s, const plab_perm* p, size_t* length);
PLAB_API void plab_solver_free(plab_solver* s);

PLAB_API plab_status plab_merge_bounds(const plab_solver* a, const plab_solver* b, const plab_perm* p,
                                       int64_t overlap_cap, size_t* lower, size_t* upper);

typedef struct plab_experiment_config {
  const char* class_expr;
  const size_t* lengths;
  size_t num_lengths;
  size_t samples;
  uint64_t master_seed;
  const char* solver; /* NULL means "auto" */
  unsigned threads;
  const plab_limits* limits; /* NULL means defaults */
} plab_experiment_config;

typedef struct plab_sample_stats {
  size_t n;
  size_t samples;
  double mean;
  double stddev;
  double c_hat;
  uint64_t master_seed;
  uint64_t stream_id;
  double wall_time_s;
  plab_status status; /* per-rung outcome; see plab_experiment_error */
} plab_sample_stats;

PLAB_API plab_status plab_experiment_run(const plab_experiment_config* cfg, plab_experiment** out);
PLAB_API size_t plab_experiment_rows(const plab_experiment* e);
PLAB_API plab_status plab_experiment_row(const plab_experiment* e, size_t i, plab_sample_stats* out);
PLAB_API const char* plab_experiment_error(const plab_experiment* e, size_t i);
/* Per-sample lengths in sample order; *count is 0 for a failed rung. */
PLAB_API const uint32_t* plab_experiment_lengths(const plab_experiment* e, size_t i, size_t* count);
PLAB_API void plab_experiment_free(plab_experiment* e);

typedef struct plab_concentration {
  size_t n;
  size_t samples;
  double alpha;
  double beta;
  double deviation;
  double empirical_tail;
  double adjusted_tail;
  double bound;
  double log_bound;
  int satisfied;
} plab_concentration;

PLAB_API plab_status plab_check_concentration(const uint32_t* lengths, size_t count, size_t n, double alpha,
                                              double beta, plab_concentration* out);

typedef struct plab_tail {
  size_t n;
  size_t samples;
  double s;
  double threshold;
  double empirical_exceed;
  double bound;
  double log_bound;
  uint32_t max_observed;
  int vacuous;
} plab_tail;

PLAB_API plab_status plab_check_tail(const uint32_t* lengths, size_t count, size_t n, double s, plab_tail* out);
/* Known growth rate, else the largest ratio of exact consecutive counts. */
PLAB_API plab_status plab_default_tail_s(const plab_class* c, const plab_limits* limits, double* out);

typedef enum plab_table_id { PLAB_TABLE_L2 = 0, PLAB_TABLE_L = 1 } plab_table_id;

typedef struct plab_table_config {
  plab_table_id table;
  double scale;  /* samples per rung = 1000 * scale */
  size_t rungs;  /* leading ladder rungs, at most 8 */
  uint64_t master_seed;
  const char* solver;
  unsigned threads;
  const plab_limits* limits;
} plab_table_config;

typedef struct plab_table_row {
  size_t n;
  double paper_mean;
  double paper_stddev;
  double paper_c_hat;
  plab_sample_stats observed;
  double z_mean;
  int skipped;
} plab_table_row;

PLAB_API plab_status plab_table_run(const plab_table_config* cfg, plab_table** out);
PLAB_API const char* plab_table_class(const plab_table* t);
PLAB_API size_t plab_table_samples(const plab_table* t);
PLAB_API size_t plab_table_rows(const plab_table* t);
PLAB_API plab_status plab_table_row_get(const plab_table* t, size_t i, plab_table_row* out);
PLAB_API const char* plab_table_error(const plab_table* t, size_t i);
PLAB_API const uint32_t* plab_table_lengths(const plab_table* t, size_t i, size_t* count);
PLAB_API void plab_table_free(plab_table* t);

#ifdef __cplusplus
}
#endif

#endif
