#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "openqfi/liouvillian.hpp"
#include "openqfi/metrics.hpp"
#include "openqfi/steady_state.hpp"

namespace openqfi {

struct SweepConfig {
  Scenario scenario = Scenario::Dephasing;
  std::string swept_parameter = "r";  // "r" for dephasing, "s" for non-dephasing
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.1;
  SystemParams fixed_params;
  SolverKind solver = SolverKind::Analytic;
  std::string output_path;
  // Share of grid points re-solved by null space when the solver is analytic.
  double audit_fraction = 0.05;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  // Throws InvalidConfig.
  void validate() const;
  // lo + i*step for i = 0..floor((hi - lo)/step).
  std::vector<double> grid() const;
  SystemParams params_at(double value) const;
};

inline constexpr std::size_t kMaxSweepPoints = 1'000'000;
inline constexpr double kMaxRecordResidual = 1e-7;
inline constexpr double kAuditTolerance = 1e-7;

struct SweepRecord {
  double param_value = 0.0;
  double mean_qfi = 0.0;
  double negativity = 0.0;
  double lambda_max = 0.0;
  std::string direction_label;
  double solver_residual = 0.0;
  // Empty when the record is clean; otherwise a short error token.
  std::string error;

  bool ok() const { return error.empty(); }
};

// Label written for the direction column when C has a degenerate top eigenvalue.
inline constexpr std::string_view kDegenerateDirection = "degenerate";

// Steady state + metrics at one parameter value. Solver failures land in
// SweepRecord::error; nothing is thrown for them.
SweepRecord evaluate_point(const SweepConfig& config, double value);

// Ordered by param_value ascending. Throws InvalidConfig before computing anything.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

enum class CrossingKind { QfiEqualsOne, DirectionSwitch };

std::string_view to_string(CrossingKind kind);
std::optional<CrossingKind> parse_crossing(std::string_view text);

struct Crossing {
  double location = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  // Direction labels (direction-switch) or "above"/"below" one (qfi-equals-one) at the bracket ends.
  std::string before;
  std::string after;
};

inline constexpr double kCrossingWidth = 1e-6;

// Coarse sweep over the config grid, then bisection on the first bracket.
// Throws NoBracket.
Crossing locate_crossing(const SweepConfig& config, CrossingKind kind);

double find_crossing(const SweepConfig& config, CrossingKind kind);

// Header `param,mean_qfi,negativity,lambda_max,direction,residual,error`, 12 significant digits, LF.
std::string format_csv(const std::vector<SweepRecord>& records);
void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path);

struct PlotOptions {
  std::string x_label = "parameter";
  std::string title;
  std::string image_path;  // defaults to the script path with a .png extension
};

// Self-contained gnuplot script: data is embedded as a datablock.
std::string format_plot_script(const std::vector<SweepRecord>& records, const PlotOptions& options);
void emit_plot_script(const std::vector<SweepRecord>& records, const std::filesystem::path& path,
                      PlotOptions options = {});

struct Check {
  std::string name;
  std::string expected;
  std::string measured;
  bool pass = false;
};

struct FigureSummary {
  int figure = 0;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::filesystem::path csv_path;
  std::filesystem::path plot_path;
  std::filesystem::path summary_path;

  bool all_pass() const;
  std::string to_text() const;
};

// Canonical figure configurations.
SweepConfig figure1_config();
SweepConfig figure2_config(double g = 2.5);

inline constexpr double kFigure2Couplings[] = {0.5, 1.0, 2.0, 2.5, 3.0};

// Runs the canonical sweep, writes figN.csv, figN.gp and figN_summary.txt into
// output_dir and compares landmarks against reference values.
FigureSummary reproduce_figure(int which, const std::filesystem::path& output_dir);

}  // namespace openqfi
