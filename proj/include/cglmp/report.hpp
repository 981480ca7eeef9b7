#pragma once

// Self-grading result tables and figure data.  Each table computes its
// cells, compares the graded columns against an embedded published
// reference dataset, and renders to fixed-format CSV or JSON.  Rendering
// is locale-independent and byte-stable across runs and thread counts.

#include <string>
#include <vector>

#include "cglmp/core.hpp"

namespace cglmp {

struct RunConfig {
  int d_min = 3;
  int d_max = 10;
  int grid = 400;       // samples per boundary curve
  double tol = 0.0;     // 0 = per-table default tolerance
  int jobs = 0;         // 0 = all hardware threads
  std::string command;  // echoed into JSON output
};

enum class OutputFormat { csv, json };

// One reference-bearing cell and its grade.
struct ReportCell {
  int d = 0;
  std::string column;
  double computed = 0.0;
  double reference = 0.0;
  double deviation = 0.0;  // computed - reference
  double tolerance = 0.0;  // the limit applied to this cell
  bool graded = true;      // informational columns carry references too
  bool within = true;
};

struct ReportRow {
  int d = 0;
  std::vector<double> values;  // aligned with ReportTable::columns
};

struct ReportTable {
  int which = 0;  // 1..4
  std::string name;
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  std::vector<ReportCell> cells;  // reference-bearing cells, row-major
  double worst_deviation = 0.0;   // over graded cells
  bool within_tolerance = true;
  std::vector<std::string> failures;
  double wall_time_ms = 0.0;
};

// Tables: 1 = nonlocal-region areas, 2 = sequential rounds on the
// maximally entangled state, 3 = the same on the maximally violating
// state, 4 = double-violation visibility frontier.  Rows span
// [d_min, d_max] within 3..10.
ReportTable make_table(Lab& lab, int which, const RunConfig& cfg);

struct FigureData {
  std::string which;  // "1a", "1b", "1c"
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  double wall_time_ms = 0.0;
};

// 1a/1b: noise-plane boundary curves per dimension for the two states;
// 1c: area-vs-dimension summary with reference columns.
FigureData make_figure(Lab& lab, const std::string& which,
                       const RunConfig& cfg);

std::string render_csv(const ReportTable& table);
std::string render_json(const ReportTable& table, const RunConfig& cfg);
std::string render_csv(const FigureData& figure);

}  // namespace cglmp
