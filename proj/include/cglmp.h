#ifndef CGLMP_H
#define CGLMP_H

/*
 * C interface to the qudit Bell-test library.  A cglmp_lab handle owns
 * the per-dimension caches and an error message describing the most
 * recent failed call on that handle.  All functions return CGLMP_OK on
 * success; outputs are written only on success unless noted.  Handles
 * are safe to share across threads; the error message is a single slot
 * per handle, so concurrent failers overwrite each other.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cglmp_lab cglmp_lab;

typedef enum cglmp_status {
  CGLMP_OK = 0,
  CGLMP_ERR_BAD_ARGUMENT = 1,
  CGLMP_ERR_OUT_OF_RANGE = 2,
  CGLMP_ERR_DIMENSION_MISMATCH = 3,
  CGLMP_ERR_NOT_HERMITIAN = 4,
  CGLMP_ERR_NO_VIOLATION = 5,
  CGLMP_ERR_DEGENERATE_TOP = 6,
  CGLMP_ERR_NO_CROSSING = 7,
  CGLMP_ERR_TOLERANCE = 8,
  CGLMP_ERR_IO = 9,
  CGLMP_ERR_INTERNAL = 10
} cglmp_status;

typedef enum cglmp_state_kind {
  CGLMP_STATE_MES = 0, /* maximally entangled state */
  CGLMP_STATE_MVS = 1  /* maximally violating state, d = 3..10 */
} cglmp_state_kind;

typedef enum cglmp_format {
  CGLMP_FORMAT_CSV = 0,
  CGLMP_FORMAT_JSON = 1
} cglmp_format;

typedef struct cglmp_run_config {
  int d_min;           /* default 3 */
  int d_max;           /* default 10 */
  int grid;            /* boundary samples per curve, default 400 */
  double tol;          /* 0 = per-table default tolerance */
  int jobs;            /* 0 = all hardware threads */
  const char* command; /* echoed into JSON output; may be NULL */
} cglmp_run_config;

cglmp_lab* cglmp_lab_create(void);
void cglmp_lab_destroy(cglmp_lab* lab);

/* Message for the most recent failure on this handle; "" if none yet.
 * The pointer stays valid until the next failing call on the handle. */
const char* cglmp_last_error(const cglmp_lab* lab);

const char* cglmp_status_name(cglmp_status status);

void cglmp_run_config_init(cglmp_run_config* cfg);

/* Bell value for visibility p in [0, 1] and sharpness lambda in (0, 1]. */
cglmp_status cglmp_value(cglmp_lab* lab, int d, cglmp_state_kind kind,
                         double p, double lambda, double* out_value);

/* Per-round Bell values for a sharpness schedule, 1 <= n_rounds <= 3.
 * Rounds before the last disturb the state through the measuring
 * channel.  out_values must hold n_rounds doubles. */
cglmp_status cglmp_sequential(cglmp_lab* lab, int d, cglmp_state_kind kind,
                              double p, const double* lambdas, int n_rounds,
                              double* out_values);

/* Chained sequential optimum: round 1 sharp, each later round at the
 * previous round's threshold sharpness 2 / I. */
cglmp_status cglmp_min_violation(cglmp_lab* lab, int d, cglmp_state_kind kind,
                                 double out_rounds[3],
                                 double out_thresholds[2]);

/* Smallest sharpness that still violates at visibility p. */
cglmp_status cglmp_lambda_min(cglmp_lab* lab, int d, cglmp_state_kind kind,
                              double p, double* out_lambda);

/* Smallest visibility that still violates under sharp measurements. */
cglmp_status cglmp_p_min(cglmp_lab* lab, int d, cglmp_state_kind kind,
                         double* out_p);

/* Area of the violating region in the (1-lambda, 1-p) plane, plus the
 * sharp-measurement visibility threshold and the closed-form area.
 * Output pointers may be NULL individually. */
cglmp_status cglmp_anr(cglmp_lab* lab, int d, cglmp_state_kind kind,
                       double* out_area, double* out_p_min,
                       double* out_closed_form);

/* Smallest visibility with two violating sequential rounds, with the
 * sharpness and Bell value where the two rounds tie.  Output pointers
 * may be NULL individually. */
cglmp_status cglmp_qmin(cglmp_lab* lab, int d, cglmp_state_kind kind,
                        double* out_q, double* out_lambda_cross,
                        double* out_value_at_cross);

/* Boundary samples (1-lambda, 1-p), p ascending from its threshold.
 * Writes grid pairs into out_xy as x0,y0,x1,y1,...  With out_xy NULL
 * the call only reports the required pair count in out_written;
 * otherwise capacity must be at least grid pairs. */
cglmp_status cglmp_boundary(cglmp_lab* lab, int d, cglmp_state_kind kind,
                            int grid, double* out_xy, int capacity,
                            int* out_written);

/* Self-grading table, which = 1..4 (areas, sequential rounds on the two
 * states, double-violation visibility).  *out_text is heap-allocated;
 * release with cglmp_string_free.  Optional outputs may be NULL.  When a
 * graded cell exceeds its tolerance the call fills every output, sets
 * *out_failures (one offending cell per line) when requested, and
 * returns CGLMP_ERR_TOLERANCE. */
cglmp_status cglmp_render_table(cglmp_lab* lab, int which,
                                const cglmp_run_config* cfg,
                                cglmp_format format, char** out_text,
                                double* out_worst_deviation,
                                int* out_within_tolerance,
                                char** out_failures);

/* Figure data as CSV: "1a"/"1b" boundary curves, "1c" area summary. */
cglmp_status cglmp_render_figure(cglmp_lab* lab, const char* which,
                                 const cglmp_run_config* cfg,
                                 char** out_text);

void cglmp_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* CGLMP_H */
