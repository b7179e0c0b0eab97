#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "openqfi/config.hpp"
#include "openqfi/error.hpp"
#include "openqfi/kernels.hpp"
#include "openqfi/metrics.hpp"
#include "openqfi/steady_state.hpp"
#include "openqfi/sweep.hpp"

namespace {

using namespace openqfi;
using nlohmann::json;

enum ExitCode { kOk = 0, kValidation = 1, kSolver = 2, kIo = 3 };

struct ParamFlags {
  std::optional<double> g, gamma, r, b_inversion, polarization, omega, s;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--g", g, "coupling strength");
    cmd.add_option("--gamma", gamma, "dephasing strength");
    cmd.add_option("--r", r, "reset rate");
    cmd.add_option("--B,--b-inversion", b_inversion, "inversion of the general noise channel");
    cmd.add_option("--polarization", polarization, "polarization of the general noise channel (default B/2)");
    cmd.add_option("--omega", omega, "level splitting (default B)");
    cmd.add_option("--s", s, "temperature parameter in [0, 0.5]");
  }

  // Given flags override p; omega and polarization follow B in the non-dephasing scenario.
  SystemParams apply(SystemParams p, Scenario scenario) const {
    if (g) p.g = *g;
    if (gamma) p.gamma = *gamma;
    if (r) p.r = *r;
    if (s) p.s = *s;
    if (b_inversion) {
      p.b_inversion = *b_inversion;
      if (scenario == Scenario::NonDephasing) {
        p.polarization = p.b_inversion / 2.0;
        p.omega = p.b_inversion;
      }
    }
    if (polarization) p.polarization = *polarization;
    if (omega) p.omega = *omega;
    return p;
  }
};

Scenario scenario_from(const std::string& text) {
  const auto s = parse_scenario(text);
  if (!s) throw Error(ErrorKind::InvalidParams, "unknown scenario '" + text + "' (dephasing | non-dephasing)");
  return *s;
}

SolverKind solver_from(const std::string& text) {
  const auto s = parse_solver(text);
  if (!s) throw Error(ErrorKind::InvalidParams, "unknown solver '" + text + "' (analytic | null-space | evolve)");
  return *s;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json complex_matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorKind::Io, "write failed for " + path);
}

// Single-state commands share scenario, parameters and solver.
struct PointCommand {
  std::string scenario = "dephasing";
  std::string solver = "analytic";
  ParamFlags params;
  bool as_json = false;
  std::string out;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--scenario", scenario, "dephasing | non-dephasing")->capture_default_str();
    cmd.add_option("--solver", solver, "analytic | null-space | evolve")->capture_default_str();
    params.add_to(cmd);
    cmd.add_flag("--json", as_json, "print JSON instead of text");
    cmd.add_option("--out", out, "output file (default stdout)");
  }

  struct Solved {
    Scenario scenario;
    SystemParams params;
    Liouvillian liouvillian;
    DensityMatrix state;
  };

  Solved solve() const {
    const Scenario sc = scenario_from(scenario);
    const SolverKind kind = solver_from(solver);
    const SystemParams base = sc == Scenario::Dephasing ? dephasing_params(0, 0, 0) : nondephasing_params(0, 0, 0, 0);
    const SystemParams p = params.apply(base, sc);
    p.validate();
    Liouvillian l = scenario_liouvillian(sc, p);
    switch (kind) {
      case SolverKind::Analytic: return {sc, p, l, analytic_steady_state(sc, p)};
      case SolverKind::NullSpace: return {sc, p, l, solve_null_space(l)};
      case SolverKind::Evolve: {
        const EvolveOptions opts{default_horizon(p), default_time_step(l)};
        return {sc, p, l, evolve_to_steady(l, DensityMatrix::maximally_mixed(), opts).state};
      }
    }
    return {sc, p, l, solve_null_space(l)};
  }
};

int run_steady_state(const PointCommand& cmd) {
  const auto solved = cmd.solve();
  const double residual = steady_state_residual(solved.liouvillian, solved.state);
  std::string text;
  if (cmd.as_json) {
    text = json{{"scenario", to_string(solved.scenario)},
                {"method", solved.state.method()},
                {"residual", residual},
                {"rho", complex_matrix_json(solved.state.matrix())}}
               .dump(2) +
           "\n";
  } else {
    text = "method: " + solved.state.method() + "\nresidual: " + num(residual) + "\nrho:\n";
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        char buf[64];
        const Complex z = solved.state(i, j);
        std::snprintf(buf, sizeof buf, "  %.12g%+.12gi", z.real(), z.imag());
        text += buf;
      }
      text += '\n';
    }
  }
  write_output(text, cmd.out);
  return kOk;
}

int run_qfi(const PointCommand& cmd) {
  const auto solved = cmd.solve();
  const QfiResult q = qfi_c_matrix(solved.state);
  const std::string label = q.degenerate ? std::string(kDegenerateDirection) : std::string(to_string(optimal_direction_label(q)));
  std::string text;
  if (cmd.as_json) {
    text = json{{"mean_qfi", q.mean_qfi},
                {"lambda_max", q.lambda_max},
                {"optimal_direction", q.optimal_direction},
                {"direction", label},
                {"degenerate", q.degenerate},
                {"c_matrix", q.c_matrix}}
               .dump(2) +
           "\n";
  } else {
    const auto& n = q.optimal_direction;
    text = "mean_qfi: " + num(q.mean_qfi) + "\nlambda_max: " + num(q.lambda_max) + "\noptimal_direction: " + num(n[0]) +
           " " + num(n[1]) + " " + num(n[2]) + "\ndirection: " + label + "\nc_matrix:\n";
    for (const auto& row : q.c_matrix) text += "  " + num(row[0]) + " " + num(row[1]) + " " + num(row[2]) + "\n";
  }
  write_output(text, cmd.out);
  return kOk;
}

int run_negativity(const PointCommand& cmd) {
  const auto solved = cmd.solve();
  const NegativityResult n = negativity(solved.state);
  std::string text;
  if (cmd.as_json) {
    text = json{{"negativity", n.value}, {"negative_sum", n.negative_sum()}, {"negative_eigenvalues", n.negative_eigenvalues}}
               .dump(2) +
           "\n";
  } else {
    text = "negativity: " + num(n.value) + "\nnegative_sum: " + num(n.negative_sum()) + "\n";
  }
  write_output(text, cmd.out);
  return kOk;
}

// Sweep-style commands: config file first, flags on top.
struct SweepCommand {
  std::string config_path;
  std::optional<std::string> scenario, sweep, solver, out;
  std::optional<double> from, to, step, audit;
  std::optional<unsigned> threads;
  ParamFlags params;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "JSON sweep config")->check(CLI::ExistingFile);
    cmd.add_option("--scenario", scenario, "dephasing | non-dephasing");
    cmd.add_option("--sweep", sweep, "swept parameter (r for dephasing, s for non-dephasing)");
    cmd.add_option("--from", from, "range start");
    cmd.add_option("--to", to, "range end");
    cmd.add_option("--step", step, "grid step");
    cmd.add_option("--solver", solver, "analytic | null-space | evolve");
    cmd.add_option("--audit", audit, "share of points re-solved by null space (analytic solver)");
    cmd.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
    params.add_to(cmd);
  }

  SweepConfig build() const {
    // Without a config file the figure setups are the defaults.
    SweepConfig c;
    if (!config_path.empty()) {
      c = load_sweep_config(config_path);
      if (scenario) {
        c.scenario = scenario_from(*scenario);
        c.swept_parameter = c.scenario == Scenario::Dephasing ? "r" : "s";
      }
    } else {
      c = scenario && scenario_from(*scenario) == Scenario::NonDephasing ? figure2_config() : figure1_config();
    }
    if (sweep) c.swept_parameter = *sweep;
    if (from) c.lo = *from;
    if (to) c.hi = *to;
    if (step) c.step = *step;
    if (solver) c.solver = solver_from(*solver);
    if (audit) c.audit_fraction = *audit;
    if (threads) c.threads = *threads;
    if (out) c.output_path = *out;
    c.fixed_params = params.apply(c.fixed_params, c.scenario);
    c.validate();
    return c;
  }
};

int run_sweep_command(const SweepCommand& cmd, const std::string& plot_path) {
  const SweepConfig config = cmd.build();
  const auto records = run_sweep(config);
  if (config.output_path.empty() || config.output_path == "-") {
    std::cout << format_csv(records);
  } else {
    emit_csv(records, config.output_path);
  }
  if (!plot_path.empty()) {
    PlotOptions opts;
    opts.x_label = config.swept_parameter;
    emit_plot_script(records, plot_path, opts);
  }
  const auto bad = std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return !r.ok(); });
  if (bad > 0) std::cerr << bad << " of " << records.size() << " records carry an error flag\n";
  return kOk;
}

int run_find_crossing(const SweepCommand& cmd, const std::string& kind_text) {
  const auto kind = parse_crossing(kind_text);
  if (!kind) throw Error(ErrorKind::InvalidParams, "unknown crossing '" + kind_text + "'");
  const Crossing c = locate_crossing(cmd.build(), *kind);
  std::cout << "crossing: " << to_string(*kind) << "\nlocation: " << num(c.location) << "\nbracket: " << num(c.bracket_lo)
            << " " << num(c.bracket_hi) << "\nbefore: " << c.before << "\nafter: " << c.after << "\n";
  return kOk;
}

int run_reproduce(int which, const std::string& dir) {
  const FigureSummary summary = reproduce_figure(which, dir);
  std::cout << summary.to_text() << "summary: " << summary.summary_path.string() << "\n";
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (classify(e.kind())) {
    case ErrorClass::Validation: return kValidation;
    case ErrorClass::Solver: return kSolver;
    case ErrorClass::Io: return kIo;
  }
  return kSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states, quantum Fisher information and negativity of two driven-dissipative qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "openqfi 0.1.0");
  bool show_isa = false;
  app.add_flag("--isa", show_isa, "print the active kernel ISA to stderr");

  PointCommand steady_cmd, qfi_cmd, neg_cmd;
  auto* steady = app.add_subcommand("steady-state", "steady-state density matrix");
  steady_cmd.add_to(*steady);
  auto* qfi = app.add_subcommand("qfi", "C matrix, mean QFI per particle and optimal direction");
  qfi_cmd.add_to(*qfi);
  auto* neg = app.add_subcommand("negativity", "negativity ||rho^T2||_1 - 1");
  neg_cmd.add_to(*neg);

  SweepCommand sweep_cmd;
  std::string plot_path;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep_cmd.add_to(*sweep);
  sweep->add_option("--out", sweep_cmd.out, "CSV path (default stdout)");
  sweep->add_option("--plot", plot_path, "also write a gnuplot script here");

  SweepCommand crossing_cmd;
  std::string crossing_kind = "qfi-equals-one";
  auto* crossing = app.add_subcommand("find-crossing", "bisect a QFI = 1 crossing or a direction switch");
  crossing_cmd.add_to(*crossing);
  crossing->add_option("--kind", crossing_kind, "qfi-equals-one | direction-switch")->capture_default_str();

  std::string fig1_dir = ".", fig2_dir = ".";
  auto* fig1 = app.add_subcommand("reproduce-fig1", "dephasing sweep over r with landmark checks");
  fig1->add_option("--out", fig1_dir, "output directory")->capture_default_str();
  auto* fig2 = app.add_subcommand("reproduce-fig2", "non-dephasing sweep over s with landmark checks");
  fig2->add_option("--out", fig2_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }
  if (show_isa) std::cerr << "kernels: " << kernels::to_string(kernels::active_isa()) << "\n";

  try {
    if (steady->parsed()) return run_steady_state(steady_cmd);
    if (qfi->parsed()) return run_qfi(qfi_cmd);
    if (neg->parsed()) return run_negativity(neg_cmd);
    if (sweep->parsed()) return run_sweep_command(sweep_cmd, plot_path);
    if (crossing->parsed()) return run_find_crossing(crossing_cmd, crossing_kind);
    if (fig1->parsed()) return run_reproduce(1, fig1_dir);
    if (fig2->parsed()) return run_reproduce(2, fig2_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kValidation;
}
