#include "cglmp.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>
#include <new>
#include <string>

#include "cglmp/errors.hpp"
#include "cglmp/noise.hpp"
#include "cglmp/report.hpp"
#include "cglmp/solvers.hpp"

struct cglmp_lab {
  cglmp::Lab lab;
  mutable std::mutex mu;
  std::string last_error;
};

namespace {

cglmp_status set_error(cglmp_lab* lab, cglmp_status s, const char* what) {
  std::lock_guard<std::mutex> lk(lab->mu);
  lab->last_error = what;
  return s;
}

cglmp_status bad_arg(cglmp_lab* lab, const char* what) {
  return set_error(lab, CGLMP_ERR_BAD_ARGUMENT, what);
}

template <typename Fn>
cglmp_status guarded(cglmp_lab* lab, const Fn& fn) {
  if (!lab) return CGLMP_ERR_BAD_ARGUMENT;
  try {
    return fn();
  } catch (const cglmp::OutOfRangeError& e) {
    return set_error(lab, CGLMP_ERR_OUT_OF_RANGE, e.what());
  } catch (const cglmp::DimensionMismatchError& e) {
    return set_error(lab, CGLMP_ERR_DIMENSION_MISMATCH, e.what());
  } catch (const cglmp::NotHermitianError& e) {
    return set_error(lab, CGLMP_ERR_NOT_HERMITIAN, e.what());
  } catch (const cglmp::NoViolationError& e) {
    return set_error(lab, CGLMP_ERR_NO_VIOLATION, e.what());
  } catch (const cglmp::DegenerateTopError& e) {
    return set_error(lab, CGLMP_ERR_DEGENERATE_TOP, e.what());
  } catch (const cglmp::NoCrossingError& e) {
    return set_error(lab, CGLMP_ERR_NO_CROSSING, e.what());
  } catch (const cglmp::IoError& e) {
    return set_error(lab, CGLMP_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return set_error(lab, CGLMP_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(lab, CGLMP_ERR_INTERNAL, "unknown failure");
  }
}

bool to_kind(cglmp_state_kind k, cglmp::StateKind* out) {
  switch (k) {
    case CGLMP_STATE_MES:
      *out = cglmp::StateKind::mes;
      return true;
    case CGLMP_STATE_MVS:
      *out = cglmp::StateKind::mvs;
      return true;
  }
  return false;
}

cglmp::RunConfig to_run_config(const cglmp_run_config* cfg) {
  cglmp::RunConfig rc;
  if (cfg) {
    rc.d_min = cfg->d_min;
    rc.d_max = cfg->d_max;
    rc.grid = cfg->grid;
    rc.tol = cfg->tol;
    rc.jobs = cfg->jobs;
    rc.command = cfg->command ? cfg->command : "";
  }
  return rc;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void check_visibility(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw cglmp::OutOfRangeError("visibility must lie in [0, 1]");
}

}  // namespace

extern "C" {

cglmp_lab* cglmp_lab_create(void) {
  return new (std::nothrow) cglmp_lab();
}

void cglmp_lab_destroy(cglmp_lab* lab) { delete lab; }

const char* cglmp_last_error(const cglmp_lab* lab) {
  if (!lab) return "";
  std::lock_guard<std::mutex> lk(lab->mu);
  return lab->last_error.c_str();
}

const char* cglmp_status_name(cglmp_status status) {
  switch (status) {
    case CGLMP_OK:
      return "CGLMP_OK";
    case CGLMP_ERR_BAD_ARGUMENT:
      return "CGLMP_ERR_BAD_ARGUMENT";
    case CGLMP_ERR_OUT_OF_RANGE:
      return "CGLMP_ERR_OUT_OF_RANGE";
    case CGLMP_ERR_DIMENSION_MISMATCH:
      return "CGLMP_ERR_DIMENSION_MISMATCH";
    case CGLMP_ERR_NOT_HERMITIAN:
      return "CGLMP_ERR_NOT_HERMITIAN";
    case CGLMP_ERR_NO_VIOLATION:
      return "CGLMP_ERR_NO_VIOLATION";
    case CGLMP_ERR_DEGENERATE_TOP:
      return "CGLMP_ERR_DEGENERATE_TOP";
    case CGLMP_ERR_NO_CROSSING:
      return "CGLMP_ERR_NO_CROSSING";
    case CGLMP_ERR_TOLERANCE:
      return "CGLMP_ERR_TOLERANCE";
    case CGLMP_ERR_IO:
      return "CGLMP_ERR_IO";
    case CGLMP_ERR_INTERNAL:
      return "CGLMP_ERR_INTERNAL";
  }
  return "CGLMP_STATUS_UNKNOWN";
}

void cglmp_run_config_init(cglmp_run_config* cfg) {
  if (!cfg) return;
  cfg->d_min = 3;
  cfg->d_max = 10;
  cfg->grid = 400;
  cfg->tol = 0.0;
  cfg->jobs = 0;
  cfg->command = nullptr;
}

cglmp_status cglmp_value(cglmp_lab* lab, int d, cglmp_state_kind kind,
                         double p, double lambda, double* out_value) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_value) return bad_arg(lab, "value: out_value is required");
    cglmp::StateKind k;
    if (!to_kind(kind, &k)) return bad_arg(lab, "value: unknown state kind");
    check_visibility(p);
    if (!(lambda > 0.0 && lambda <= 1.0))
      throw cglmp::OutOfRangeError("value: sharpness must lie in (0, 1]");
    *out_value = lab->lab.dim(d).fast_value(k, p, lambda);
    return CGLMP_OK;
  });
}

cglmp_status cglmp_sequential(cglmp_lab* lab, int d, cglmp_state_kind kind,
                              double p, const double* lambdas, int n_rounds,
                              double* out_values) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!lambdas || !out_values)
      return bad_arg(lab, "sequential: lambdas and out_values are required");
    if (n_rounds < 1 || n_rounds > 3)
      return bad_arg(lab, "sequential: schedule length must be 1..3");
    cglmp::StateKind k;
    if (!to_kind(kind, &k))
      return bad_arg(lab, "sequential: unknown state kind");
    check_visibility(p);
    const cglmp::SequentialRun run = cglmp::sequential_values(
        lab->lab, d, k, p,
        std::vector<double>(lambdas, lambdas + n_rounds));
    for (int i = 0; i < n_rounds; ++i) out_values[i] = run.round_values[i];
    return CGLMP_OK;
  });
}

cglmp_status cglmp_min_violation(cglmp_lab* lab, int d, cglmp_state_kind kind,
                                 double out_rounds[3],
                                 double out_thresholds[2]) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_rounds || !out_thresholds)
      return bad_arg(lab, "min_violation: output arrays are required");
    cglmp::StateKind k;
    if (!to_kind(kind, &k))
      return bad_arg(lab, "min_violation: unknown state kind");
    const cglmp::MinViolationResult r =
        cglmp::min_violation_table(lab->lab, d, k);
    for (int i = 0; i < 3; ++i) out_rounds[i] = r.rounds[i];
    for (int i = 0; i < 2; ++i) out_thresholds[i] = r.thresholds[i];
    return CGLMP_OK;
  });
}

cglmp_status cglmp_lambda_min(cglmp_lab* lab, int d, cglmp_state_kind kind,
                              double p, double* out_lambda) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_lambda) return bad_arg(lab, "lambda_min: out_lambda is required");
    cglmp::StateKind k;
    if (!to_kind(kind, &k))
      return bad_arg(lab, "lambda_min: unknown state kind");
    *out_lambda = cglmp::lambda_min(lab->lab, d, k, p);
    return CGLMP_OK;
  });
}

cglmp_status cglmp_p_min(cglmp_lab* lab, int d, cglmp_state_kind kind,
                         double* out_p) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_p) return bad_arg(lab, "p_min: out_p is required");
    cglmp::StateKind k;
    if (!to_kind(kind, &k)) return bad_arg(lab, "p_min: unknown state kind");
    *out_p = cglmp::p_min(lab->lab, d, k);
    return CGLMP_OK;
  });
}

cglmp_status cglmp_anr(cglmp_lab* lab, int d, cglmp_state_kind kind,
                       double* out_area, double* out_p_min,
                       double* out_closed_form) {
  return guarded(lab, [&]() -> cglmp_status {
    cglmp::StateKind k;
    if (!to_kind(kind, &k)) return bad_arg(lab, "anr: unknown state kind");
    const cglmp::AnrResult r = cglmp::anr(lab->lab, d, k);
    if (out_area) *out_area = r.area;
    if (out_p_min) *out_p_min = r.p_min;
    if (out_closed_form) *out_closed_form = r.area_closed_form;
    return CGLMP_OK;
  });
}

cglmp_status cglmp_qmin(cglmp_lab* lab, int d, cglmp_state_kind kind,
                        double* out_q, double* out_lambda_cross,
                        double* out_value_at_cross) {
  return guarded(lab, [&]() -> cglmp_status {
    cglmp::StateKind k;
    if (!to_kind(kind, &k)) return bad_arg(lab, "qmin: unknown state kind");
    const cglmp::QminResult r = cglmp::q_min(lab->lab, d, k);
    if (out_q) *out_q = r.q_min;
    if (out_lambda_cross) *out_lambda_cross = r.lambda_cross;
    if (out_value_at_cross) *out_value_at_cross = r.value_at_cross;
    return CGLMP_OK;
  });
}

cglmp_status cglmp_boundary(cglmp_lab* lab, int d, cglmp_state_kind kind,
                            int grid, double* out_xy, int capacity,
                            int* out_written) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_written) return bad_arg(lab, "boundary: out_written is required");
    cglmp::StateKind k;
    if (!to_kind(kind, &k))
      return bad_arg(lab, "boundary: unknown state kind");
    if (!out_xy) {
      if (grid < 2)
        throw cglmp::OutOfRangeError("boundary: grid must be >= 2");
      *out_written = grid;
      return CGLMP_OK;
    }
    if (capacity < grid)
      return bad_arg(lab, "boundary: capacity is smaller than grid");
    const cglmp::BoundaryCurve c = cglmp::boundary_curve(lab->lab, d, k, grid);
    for (size_t i = 0; i < c.points.size(); ++i) {
      out_xy[2 * i] = c.points[i][0];
      out_xy[2 * i + 1] = c.points[i][1];
    }
    *out_written = static_cast<int>(c.points.size());
    return CGLMP_OK;
  });
}

cglmp_status cglmp_render_table(cglmp_lab* lab, int which,
                                const cglmp_run_config* cfg,
                                cglmp_format format, char** out_text,
                                double* out_worst_deviation,
                                int* out_within_tolerance,
                                char** out_failures) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!out_text) return bad_arg(lab, "render_table: out_text is required");
    if (format != CGLMP_FORMAT_CSV && format != CGLMP_FORMAT_JSON)
      return bad_arg(lab, "render_table: unknown format");
    const cglmp::RunConfig rc = to_run_config(cfg);
    const cglmp::ReportTable t = cglmp::make_table(lab->lab, which, rc);
    const std::string text = format == CGLMP_FORMAT_JSON
                                 ? cglmp::render_json(t, rc)
                                 : cglmp::render_csv(t);
    *out_text = dup_string(text);
    if (!*out_text)
      return set_error(lab, CGLMP_ERR_INTERNAL, "render_table: out of memory");
    if (out_worst_deviation) *out_worst_deviation = t.worst_deviation;
    if (out_within_tolerance)
      *out_within_tolerance = t.within_tolerance ? 1 : 0;
    if (out_failures) {
      std::string joined;
      for (const std::string& f : t.failures) {
        joined += f;
        joined += '\n';
      }
      *out_failures = dup_string(joined);
      if (!*out_failures) {
        std::free(*out_text);
        *out_text = nullptr;
        return set_error(lab, CGLMP_ERR_INTERNAL,
                         "render_table: out of memory");
      }
    }
    if (!t.within_tolerance) {
      char msg[96];
      std::snprintf(msg, sizeof msg,
                    "render_table: %zu graded cells exceed tolerance",
                    t.failures.size());
      return set_error(lab, CGLMP_ERR_TOLERANCE, msg);
    }
    return CGLMP_OK;
  });
}

cglmp_status cglmp_render_figure(cglmp_lab* lab, const char* which,
                                 const cglmp_run_config* cfg,
                                 char** out_text) {
  return guarded(lab, [&]() -> cglmp_status {
    if (!which || !out_text)
      return bad_arg(lab, "render_figure: which and out_text are required");
    const cglmp::RunConfig rc = to_run_config(cfg);
    const cglmp::FigureData f = cglmp::make_figure(lab->lab, which, rc);
    *out_text = dup_string(cglmp::render_csv(f));
    if (!*out_text)
      return set_error(lab, CGLMP_ERR_INTERNAL,
                       "render_figure: out of memory");
    return CGLMP_OK;
  });
}

void cglmp_string_free(char* text) { std::free(text); }

}  // extern "C"
