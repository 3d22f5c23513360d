#pragma once

// Experiment configuration, sweeps over internal parameters, verification
// suites and the command dispatch behind the goldman executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/pants.hpp"

namespace goldman {

enum class SweepAxis { S, R };

struct SweepSpec {
  SweepAxis axis;
  std::vector<double> values;  // nonempty, strictly ascending
};

struct ExperimentConfig {
  BoundaryTriple R;
  double s;
  double second;  // t or r, per chart
  InternalChart chart;
  std::optional<SweepSpec> sweep = std::nullopt;
  int max_word_len = 8;
  std::optional<double> T = std::nullopt;  // default: 3x the shortest typical length at the first point
  int trace_depth = 8;
  int hull_depth = 6;
  std::uint64_t seed = 1;

  PantsParams params() const;
  PantsParams params_at(double sweep_value) const;  // requires sweep
};

// Single JSON document; real numbers as decimal strings. Throws ConfigParse,
// which also covers values outside the parameter cells.
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

struct ResultRow {
  double sweep_value = 0.0;
  double K = 0.0, L = 0.0;
  double shortest_len = 0.0;
  std::string shortest_word;
  std::uint64_t R_T = 0;
  double entropy_est = 0.0;    // NaN when R_T = 0
  double entropy_upper = 0.0;  // unchecked value when preconditions fail
  std::vector<std::string> flags;
};

// The row schema's counting horizon: config T or the derived default.
double sweep_horizon(const ExperimentConfig& cfg);

// One row per sweep value, in sweep order; per-row failures become flags.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg, unsigned workers = 0);
std::string format_csv(const std::vector<ResultRow>& rows);

struct SuiteResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

std::vector<SuiteResult> run_verify(const ExperimentConfig& cfg);

struct CommandOptions {
  std::string command;  // verify | sweep | entropy | shortest | decompose
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> word;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitVerify = 2;
inline constexpr int kExitNumeric = 3;

// Writes the payload to out_path or `out`; diagnostics go to `err`.
int run_command(const CommandOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace goldman
