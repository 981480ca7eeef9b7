// Command-line workbench over the public C API.  Exit codes: 0 success,
// 2 bad arguments or domain errors, 3 reference-tolerance failure,
// 4 I/O failure.

#include <CLI11.hpp>
#include <cglmp.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

namespace {

struct LabHandle {
  cglmp_lab* lab = cglmp_lab_create();
  ~LabHandle() { cglmp_lab_destroy(lab); }
};

int status_to_exit(cglmp_status s) {
  switch (s) {
    case CGLMP_OK:
      return 0;
    case CGLMP_ERR_TOLERANCE:
      return 3;
    case CGLMP_ERR_IO:
      return 4;
    default:
      return 2;
  }
}

int report_error(const cglmp_lab* lab, cglmp_status s) {
  std::fprintf(stderr, "error: %s (%s)\n", cglmp_last_error(lab),
               cglmp_status_name(s));
  return status_to_exit(s);
}

// stdout unless --out was given; write failures exit with code 4
int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open %s for writing\n",
                 out_path.c_str());
    return 4;
  }
  out << text;
  out.flush();
  if (!out.good()) {
    std::fprintf(stderr, "error: short write to %s\n", out_path.c_str());
    return 4;
  }
  return 0;
}

cglmp_state_kind parse_kind(const std::string& s) {
  return s == "mvs" ? CGLMP_STATE_MVS : CGLMP_STATE_MES;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int table_id(const std::string& which) {
  if (which == "1" || which == "I") return 1;
  if (which == "2" || which == "II") return 2;
  if (which == "3" || which == "III") return 3;
  return 4;
}

std::string join_args(int argc, char** argv) {
  std::string cmd;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qudit Bell-test workbench: values, noise thresholds, "
               "self-grading tables and figure data"};
  app.require_subcommand(1);

  int d = 3;
  std::string state = "mes";
  double p = 1.0;
  double lambda = 1.0;
  std::vector<double> lambdas;
  int grid = 400;
  double tol = 0.0;
  int jobs = 0;
  int d_min = 3;
  int d_max = 10;
  std::string format = "csv";
  std::string out_path;
  std::string which;

  const auto add_common = [&](CLI::App* sub, bool with_range) {
    sub->add_option("--d", d, "local dimension")->capture_default_str();
    sub->add_option("--state", state, "shared state")
        ->check(CLI::IsMember({"mes", "mvs"}))
        ->capture_default_str();
    sub->add_option("--out", out_path, "write output to this file");
    if (with_range) {
      sub->add_option("--d-min", d_min, "first dimension")
          ->capture_default_str();
      sub->add_option("--d-max", d_max, "last dimension")
          ->capture_default_str();
      sub->add_option("--grid", grid, "boundary samples per curve")
          ->capture_default_str();
      sub->add_option("--tol", tol, "override the acceptance tolerance")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--jobs", jobs, "worker threads (0 = all)")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--format", format, "output format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
  };

  CLI::App* sub_value = app.add_subcommand(
      "value", "Bell value at one visibility/sharpness point");
  add_common(sub_value, false);
  sub_value->add_option("--p", p, "visibility")->capture_default_str();
  sub_value->add_option("--lambda", lambda, "measurement sharpness")
      ->capture_default_str();

  CLI::App* sub_seq = app.add_subcommand(
      "sequential", "per-round Bell values for a sharpness schedule");
  add_common(sub_seq, false);
  sub_seq->add_option("--p", p, "visibility")->capture_default_str();
  sub_seq->add_option("--lambda", lambdas, "sharpness per round (up to 3)")
      ->required();

  CLI::App* sub_table = app.add_subcommand(
      "table", "compute a reference table and grade it");
  add_common(sub_table, true);
  sub_table->add_option("--which", which, "table id")
      ->check(CLI::IsMember({"1", "2", "3", "4", "I", "II", "III", "IV"}))
      ->required();

  CLI::App* sub_figure =
      app.add_subcommand("figure", "emit figure data as CSV");
  add_common(sub_figure, true);
  sub_figure->add_option("--which", which, "figure id")
      ->check(CLI::IsMember({"1a", "1b", "1c"}))
      ->required();

  CLI::App* sub_qmin = app.add_subcommand(
      "qmin", "smallest visibility with two violating rounds");
  add_common(sub_qmin, false);
  sub_qmin->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI::App* sub_anr = app.add_subcommand(
      "anr", "area of the violating region in the noise plane");
  add_common(sub_anr, false);
  sub_anr->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI::App* sub_boundary = app.add_subcommand(
      "boundary", "threshold curve in the (1-lambda, 1-p) plane");
  add_common(sub_boundary, false);
  sub_boundary->add_option("--grid", grid, "number of samples")
      ->capture_default_str();
  sub_boundary->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  LabHandle h;
  if (!h.lab) {
    std::fprintf(stderr, "error: failed to allocate workspace\n");
    return 2;
  }
  const cglmp_state_kind kind = parse_kind(state);

  if (sub_value->parsed()) {
    double v = 0.0;
    const cglmp_status s = cglmp_value(h.lab, d, kind, p, lambda, &v);
    if (s != CGLMP_OK) return report_error(h.lab, s);
    return emit(fmt6(v) + "\n", out_path);
  }

  if (sub_seq->parsed()) {
    double rounds[3] = {0, 0, 0};
    const cglmp_status s =
        cglmp_sequential(h.lab, d, kind, p, lambdas.data(),
                         static_cast<int>(lambdas.size()), rounds);
    if (s != CGLMP_OK) return report_error(h.lab, s);
    nlohmann::ordered_json j;
    j["d"] = d;
    j["state"] = state;
    j["p"] = p;
    j["lambdas"] = lambdas;
    j["rounds"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < lambdas.size(); ++i) {
      j["rounds"].push_back({{"round", i + 1},
                             {"value", rounds[i]},
                             {"violation", rounds[i] > 2.0}});
    }
    return emit(j.dump(2) + "\n", out_path);
  }

  if (sub_table->parsed()) {
    cglmp_run_config cfg;
    cglmp_run_config_init(&cfg);
    cfg.d_min = d_min;
    cfg.d_max = d_max;
    cfg.grid = grid;
    cfg.tol = tol;
    cfg.jobs = jobs;
    const std::string cmd = join_args(argc, argv);
    cfg.command = cmd.c_str();
    char* text = nullptr;
    char* failures = nullptr;
    const cglmp_status s = cglmp_render_table(
        h.lab, table_id(which), &cfg,
        format == "json" ? CGLMP_FORMAT_JSON : CGLMP_FORMAT_CSV, &text,
        nullptr, nullptr, &failures);
    if (s != CGLMP_OK && s != CGLMP_ERR_TOLERANCE)
      return report_error(h.lab, s);
    const int emit_rc = emit(text, out_path);
    cglmp_string_free(text);
    if (s == CGLMP_ERR_TOLERANCE) {
      std::fprintf(stderr, "tolerance exceeded:\n%s", failures);
      cglmp_string_free(failures);
      return emit_rc != 0 ? emit_rc : 3;
    }
    cglmp_string_free(failures);
    return emit_rc;
  }

  if (sub_figure->parsed()) {
    cglmp_run_config cfg;
    cglmp_run_config_init(&cfg);
    cfg.d_min = d_min;
    cfg.d_max = d_max;
    cfg.grid = grid;
    cfg.tol = tol;
    cfg.jobs = jobs;
    const std::string cmd = join_args(argc, argv);
    cfg.command = cmd.c_str();
    char* text = nullptr;
    const cglmp_status s = cglmp_render_figure(h.lab, which.c_str(), &cfg,
                                               &text);
    if (s != CGLMP_OK) return report_error(h.lab, s);
    const int emit_rc = emit(text, out_path);
    cglmp_string_free(text);
    return emit_rc;
  }

  if (sub_qmin->parsed()) {
    double q = 0.0, cross = 0.0, value = 0.0;
    const cglmp_status s = cglmp_qmin(h.lab, d, kind, &q, &cross, &value);
    if (s != CGLMP_OK) return report_error(h.lab, s);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["d"] = d;
      j["state"] = state;
      j["q_min"] = q;
      j["lambda_cross"] = cross;
      j["value_at_cross"] = value;
      return emit(j.dump(2) + "\n", out_path);
    }
    return emit("d,state,q_min,lambda_cross,value_at_cross\n" +
                    std::to_string(d) + "," + state + "," + fmt6(q) + "," +
                    fmt6(cross) + "," + fmt6(value) + "\n",
                out_path);
  }

  if (sub_anr->parsed()) {
    double area = 0.0, pm = 0.0, closed = 0.0;
    const cglmp_status s = cglmp_anr(h.lab, d, kind, &area, &pm, &closed);
    if (s != CGLMP_OK) return report_error(h.lab, s);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["d"] = d;
      j["state"] = state;
      j["area"] = area;
      j["p_min"] = pm;
      j["area_closed_form"] = closed;
      return emit(j.dump(2) + "\n", out_path);
    }
    return emit("d,state,area,p_min,area_closed_form\n" + std::to_string(d) +
                    "," + state + "," + fmt6(area) + "," + fmt6(pm) + "," +
                    fmt6(closed) + "\n",
                out_path);
  }

  // boundary
  double xy_probe = 0.0;
  (void)xy_probe;
  std::vector<double> xy(static_cast<size_t>(grid > 0 ? 2 * grid : 2));
  int written = 0;
  const cglmp_status s = cglmp_boundary(h.lab, d, kind, grid, xy.data(),
                                        grid, &written);
  if (s != CGLMP_OK) return report_error(h.lab, s);
  if (format == "json") {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["state"] = state;
    j["grid"] = grid;
    j["points"] = nlohmann::ordered_json::array();
    for (int i = 0; i < written; ++i)
      j["points"].push_back({xy[2 * i], xy[2 * i + 1]});
    return emit(j.dump(2) + "\n", out_path);
  }
  std::string text = "one_minus_lambda,one_minus_p\n";
  for (int i = 0; i < written; ++i)
    text += fmt6(xy[2 * i]) + "," + fmt6(xy[2 * i + 1]) + "\n";
  return emit(text, out_path);
}
