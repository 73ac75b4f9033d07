#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "npg/equilibria.hpp"

namespace npg {

inline constexpr const char* kToolVersion = "1.0.0";

// Output file could not be opened or written.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct SweepSpec {
  std::string param;
  double start = 0.0, stop = 0.0, step = 0.0;
};

// Parses "param:start:stop:step".
SweepSpec parse_sweep(const std::string& text);

// Flat bag of every CLI/config key; scenario-specific validation happens
// when it is turned into a ScenarioSpec.
struct RunConfig {
  std::string scenario = "basic-competition";
  double d0 = 1.0;
  double d = 1.0;
  double ps = 0.0;
  double pa = 0.0;
  double gamma = 1.0;
  std::optional<double> dl, dh, d2;
  std::string stickiness = "reciprocal";
  std::string leader = "isp";
  std::optional<SweepSpec> sweep_spec;
  std::string out_path;
  bool verify = false;
  std::optional<double> epsilon;  // defaults to 1e-6 * Umax
  std::optional<int> grid;        // verification grid / field resolution

  double epsilon_or_default() const;
};

// Flat key=value config file ('#' comments, blank lines ignored). Returns
// the entries in file order.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Applies one config entry onto the run configuration; unknown keys or
// malformed values raise DomainError.
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

ScenarioSpec make_scenario(const RunConfig& config);

struct ScenarioRun {
  ScenarioSpec spec;
  std::vector<EquilibriumOutcome> outcomes;
  std::optional<MulticlassLineResult> line;  // multiclass-line only
  std::vector<NashCheck> checks;             // parallel to outcomes when verify is set
};

ScenarioRun run_scenario(const RunConfig& config);

void write_summary(std::ostream& os, const ScenarioRun& run);
void write_solve_json(std::ostream& os, const ScenarioRun& run);

struct SweepRow {
  double x = 0.0;
  std::optional<EquilibriumOutcome> outcome;  // empty when the point is illegal
};

struct SweepTable {
  std::vector<std::string> metadata;  // written as '#'-prefixed lines
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;  // ordered by swept value

  void write_csv(std::ostream& os) const;
};

// Evaluates the scenario across the sweep range, one row per outcome.
// Points are independent and evaluated in parallel; rows are assembled in
// sweep order either way.
SweepTable sweep(const RunConfig& config);

// Serial reference implementation, kept for testing.
SweepTable sweep_serial(const RunConfig& config);

struct FieldTable {
  std::vector<std::string> metadata;
  std::vector<FieldSample> samples;

  void write_csv(std::ostream& os) const;
};

// Gradient samples of the coalition objective over the (pl, p2) box with the
// class price gap pinned at its equilibrium value. multiclass-line only.
FieldTable field(const RunConfig& config);

struct ReportEntry {
  std::string scenario;
  std::string field;
  std::optional<double> closed_form, printed, oracle;
  std::optional<std::string> printed_tag, oracle_tag;  // verdict-only rows
  double abs_gap = 0.0;
  double rel_gap = 0.0;
  bool consistent = true;
};

// Adjudicates the printed equilibrium values against the numeric oracle,
// scenario by scenario and field by field.
std::vector<ReportEntry> report(const RunConfig& config);

void write_report(std::ostream& os, const std::vector<ReportEntry>& entries);
void write_report_csv(std::ostream& os, const std::vector<ReportEntry>& entries);

// 12 significant digits, locale-independent.
std::string format_number(double value);

}  // namespace npg
