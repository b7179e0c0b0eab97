#include "openqfi/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "openqfi/error.hpp"

namespace openqfi {

namespace {

std::string num(double v, int digits = 12) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::InvalidConfig, message); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

DensityMatrix solve(const SweepConfig& config, const SystemParams& params, const Liouvillian& l) {
  switch (config.solver) {
    case SolverKind::Analytic: return analytic_steady_state(config.scenario, params);
    case SolverKind::NullSpace: return solve_null_space(l);
    case SolverKind::Evolve:
      return evolve_to_steady(l, DensityMatrix::maximally_mixed(), {default_horizon(params), default_time_step(l)})
          .state;
  }
  return solve_null_space(l);
}

void fill_metrics(SweepRecord& rec, const Liouvillian& l, const DensityMatrix& rho) {
  const QfiResult qfi = qfi_c_matrix(rho);
  rec.mean_qfi = qfi.mean_qfi;
  rec.lambda_max = qfi.lambda_max;
  rec.negativity = negativity(rho).value;
  rec.direction_label =
      qfi.degenerate ? std::string(kDegenerateDirection) : std::string(to_string(optimal_direction_label(qfi)));
  rec.solver_residual = steady_state_residual(l, rho);
  if (!(rec.solver_residual <= kMaxRecordResidual)) rec.error = "residual";
}

bool audited(const SweepConfig& config, std::size_t index) {
  if (config.solver != SolverKind::Analytic || config.audit_fraction <= 0.0) return false;
  const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(1.0 / config.audit_fraction)));
  return index % every == 0;
}

void audit(SweepRecord& rec, const Liouvillian& l, const DensityMatrix& rho) {
  try {
    const DensityMatrix reference = solve_null_space(l);
    if (max_abs_diff(reference.matrix(), rho.matrix()) > kAuditTolerance && rec.ok()) rec.error = "audit-mismatch";
  } catch (const Error& e) {
    // No unique reference to compare with (e.g. r = 0 in the dephasing model).
    if (e.kind() != ErrorKind::DegenerateSteadyState && rec.ok()) rec.error = "audit-" + std::string(to_string(e.kind()));
  }
}

SweepRecord evaluate(const SweepConfig& config, double value, bool with_audit) {
  SweepRecord rec;
  rec.param_value = value;
  rec.mean_qfi = rec.negativity = rec.lambda_max = rec.solver_residual = std::nan("");
  try {
    const SystemParams params = config.params_at(value);
    const Liouvillian l = scenario_liouvillian(config.scenario, params);
    try {
      const DensityMatrix rho = solve(config, params, l);
      fill_metrics(rec, l, rho);
      if (with_audit) audit(rec, l, rho);
    } catch (const NotConvergedError& e) {
      fill_metrics(rec, l, e.last_state());
      rec.error = std::string(to_string(e.kind()));
    }
  } catch (const Error& e) {
    rec.error = std::string(to_string(e.kind()));
  }
  return rec;
}

std::string side_of_one(double f) { return f > 1.0 ? "above" : "below"; }

}  // namespace

void SweepConfig::validate() const {
  if (scenario == Scenario::Custom) invalid("scenario must be dephasing or non-dephasing");
  const bool param_ok = (scenario == Scenario::Dephasing && swept_parameter == "r") ||
                        (scenario == Scenario::NonDephasing && swept_parameter == "s");
  if (!param_ok) {
    invalid("cannot sweep '" + swept_parameter + "' in the " + std::string(to_string(scenario)) +
            " scenario (expected " + (scenario == Scenario::Dephasing ? "r" : "s") + ")");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) invalid("range needs lo < hi");
  if (!(step > 0.0) || !std::isfinite(step)) invalid("step must be > 0");
  if ((hi - lo) / step > static_cast<double>(kMaxSweepPoints)) invalid("range/step exceeds 1e6 points");
  if (!(audit_fraction >= 0.0 && audit_fraction <= 1.0)) invalid("audit_fraction must lie in [0, 1]");
  try {
    params_at(lo).validate();
    params_at(hi).validate();
  } catch (const Error& e) {
    invalid(std::string("fixed_params: ") + e.what());
  }
}

std::vector<double> SweepConfig::grid() const {
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
  return out;
}

SystemParams SweepConfig::params_at(double value) const {
  SystemParams p = fixed_params;
  if (swept_parameter == "r")
    p.r = value;
  else if (swept_parameter == "s")
    p.s = value;
  else
    invalid("unknown swept parameter '" + swept_parameter + "'");
  return p;
}

SweepRecord evaluate_point(const SweepConfig& config, double value) { return evaluate(config, value, false); }

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> grid = config.grid();
  std::vector<SweepRecord> records(grid.size());

  unsigned workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) records[i] = evaluate(config, grid[i], audited(config, i));
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

std::string_view to_string(CrossingKind kind) {
  return kind == CrossingKind::QfiEqualsOne ? "qfi-equals-one" : "direction-switch";
}

std::optional<CrossingKind> parse_crossing(std::string_view text) {
  if (text == "qfi-equals-one") return CrossingKind::QfiEqualsOne;
  if (text == "direction-switch") return CrossingKind::DirectionSwitch;
  return std::nullopt;
}

Crossing locate_crossing(const SweepConfig& config, CrossingKind kind) {
  const std::vector<SweepRecord> coarse = run_sweep(config);

  auto usable = [&](const SweepRecord& r) {
    if (!r.ok()) return false;
    return kind == CrossingKind::QfiEqualsOne || r.direction_label != kDegenerateDirection;
  };
  auto differs = [&](const SweepRecord& a, const SweepRecord& b) {
    if (kind == CrossingKind::QfiEqualsOne) return (a.mean_qfi > 1.0) != (b.mean_qfi > 1.0);
    return a.direction_label != b.direction_label;
  };
  auto tag = [&](const SweepRecord& r) {
    return kind == CrossingKind::QfiEqualsOne ? side_of_one(r.mean_qfi) : r.direction_label;
  };

  const SweepRecord* prev = nullptr;
  for (const auto& rec : coarse) {
    if (!usable(rec)) continue;
    if (prev != nullptr && differs(*prev, rec)) {
      SweepRecord left = *prev;
      double lo = prev->param_value, hi = rec.param_value;
      while (hi - lo > kCrossingWidth) {
        const double mid = 0.5 * (lo + hi);
        const SweepRecord m = evaluate_point(config, mid);
        if (!m.ok()) throw Error(ErrorKind::NoConvergence, "bisection point " + num(mid) + " failed: " + m.error);
        if (differs(left, m))
          hi = mid;
        else
          lo = mid;
      }
      return {0.5 * (lo + hi), lo, hi, tag(left), tag(rec)};
    }
    prev = &rec;
  }
  throw Error(ErrorKind::NoBracket, std::string(to_string(kind)) + " not bracketed in [" + num(config.lo) + ", " +
                                        num(config.hi) + "]");
}

double find_crossing(const SweepConfig& config, CrossingKind kind) { return locate_crossing(config, kind).location; }

std::string format_csv(const std::vector<SweepRecord>& records) {
  std::string out = "param,mean_qfi,negativity,lambda_max,direction,residual,error\n";
  for (const auto& r : records) {
    out += num(r.param_value) + ',' + num(r.mean_qfi) + ',' + num(r.negativity) + ',' + num(r.lambda_max) + ',' +
           r.direction_label + ',' + num(r.solver_residual) + ',' + r.error + '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::filesystem::path& path) {
  write_file(path, format_csv(records));
}

std::string format_plot_script(const std::vector<SweepRecord>& records, const PlotOptions& options) {
  std::ostringstream gp;
  gp << "# mean QFI per particle and negativity against " << options.x_label << "\n";
  gp << "set terminal pngcairo size 900,600 enhanced\n";
  gp << "set output '" << options.image_path << "'\n";
  if (!options.title.empty()) gp << "set title '" << options.title << "'\n";
  gp << "set xlabel '" << options.x_label << "'\n";
  gp << "set ylabel 'mean QFI / negativity'\n";
  gp << "set key top right\n";
  gp << "set grid\n";
  if (!records.empty()) {
    gp << "set xrange [" << num(records.front().param_value) << ":" << num(records.back().param_value) << "]\n";
    gp << "$data << EOD\n";
    for (const auto& r : records) {
      if (!r.ok() && std::isnan(r.mean_qfi)) continue;
      gp << num(r.param_value) << ' ' << num(r.mean_qfi) << ' ' << num(r.negativity) << '\n';
    }
    gp << "EOD\n";
    gp << "plot $data using 1:2 with lines lw 2 lc rgb 'blue' title 'mean QFI per particle', \\\n"
       << "     $data using 1:3 with lines lw 2 lc rgb 'dark-green' title 'negativity', \\\n"
       << "     1 with lines dt 2 lw 2 lc rgb 'red' title 'shot-noise limit'\n";
  } else {
    gp << "plot 1 with lines dt 2 lw 2 lc rgb 'red' title 'shot-noise limit'\n";
  }
  return gp.str();
}

void emit_plot_script(const std::vector<SweepRecord>& records, const std::filesystem::path& path,
                      PlotOptions options) {
  if (options.image_path.empty()) options.image_path = std::filesystem::path(path).replace_extension(".png").string();
  write_file(path, format_plot_script(records, options));
}

bool FigureSummary::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string FigureSummary::to_text() const {
  std::ostringstream out;
  out << "figure " << figure << " reproduction\n";
  for (const auto& c : checks) {
    out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": measured " << c.measured << ", expected " << c.expected
        << '\n';
  }
  for (const auto& n : notes) out << "note: " << n << '\n';
  if (!csv_path.empty()) out << "csv: " << csv_path.string() << '\n';
  if (!plot_path.empty()) out << "plot script: " << plot_path.string() << '\n';
  out << (all_pass() ? "all checks passed\n" : "some checks failed\n");
  return out.str();
}

SweepConfig figure1_config() {
  SweepConfig c;
  c.scenario = Scenario::Dephasing;
  c.swept_parameter = "r";
  c.lo = 0.0;
  c.hi = 20.0;
  c.step = 0.1;
  c.fixed_params = dephasing_params(2.5, 0.5, 0.0);
  c.solver = SolverKind::Analytic;
  return c;
}

SweepConfig figure2_config(double g) {
  SweepConfig c;
  c.scenario = Scenario::NonDephasing;
  c.swept_parameter = "s";
  c.lo = 0.0;
  c.hi = 0.5;
  c.step = 0.005;
  c.fixed_params = nondephasing_params(g, 1.0, 0.0, 10.0);
  c.solver = SolverKind::Analytic;
  return c;
}

namespace {

Check within(std::string name, double measured, double expected, double tol) {
  return {std::move(name), num(expected, 9) + " +- " + num(tol, 3), num(measured, 9),
          std::abs(measured - expected) <= tol};
}

FigureSummary reproduce_figure1(const std::filesystem::path& dir) {
  FigureSummary summary;
  summary.figure = 1;
  const SweepConfig config = figure1_config();
  const auto records = run_sweep(config);
  summary.csv_path = dir / "fig1.csv";
  summary.plot_path = dir / "fig1.gp";
  emit_csv(records, summary.csv_path);
  emit_plot_script(records, summary.plot_path, {"reset rate r", "dephasing, g = 2.5, gamma = 0.5", ""});

  const std::size_t bad = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok(); });
  summary.checks.push_back({"sweep records without error flag", std::to_string(records.size()),
                            std::to_string(records.size() - bad), bad == 0});

  const SystemParams at14 = config.params_at(14.0);
  const DensityMatrix rho14 = analytic_dephasing(at14);
  const QfiResult q14 = qfi_c_matrix(rho14);
  const NegativityResult n14 = negativity(rho14);
  summary.checks.push_back(within("mean QFI at r = 14", q14.mean_qfi, 1.00226, 5e-4));
  summary.checks.push_back(within("negativity at r = 14", n14.value, 0.0496243, 5e-5));
  summary.notes.push_back("negativity uses ||rho^T2||_1 - 1 (Bell state = 1); the sum of |negative eigenvalues| at "
                          "r = 14 is " + num(n14.negative_sum(), 9));

  const DensityMatrix rho0 = analytic_dephasing(config.params_at(0.0));
  summary.checks.push_back(within("mean QFI at r = 0", qfi_c_matrix(rho0).mean_qfi, 0.0, 1e-10));
  summary.checks.push_back(within("negativity at r = 0", negativity(rho0).value, 0.0, 1e-10));

  // Last decade of a logarithmic sweep up to r = 1e4.
  bool decreasing = true;
  double previous = std::numeric_limits<double>::infinity();
  double neg_far = 0.0, qfi_far = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double r = std::pow(10.0, 3.0 + 0.1 * k);
    const DensityMatrix rho = analytic_dephasing(config.params_at(r));
    neg_far = negativity(rho).value;
    qfi_far = qfi_c_matrix(rho).mean_qfi;
    decreasing = decreasing && neg_far < previous;
    previous = neg_far;
  }
  summary.checks.push_back({"negativity at r = 1e4", "<= 0.01", num(neg_far, 6), neg_far <= 1e-2});
  summary.checks.push_back({"negativity decreasing over r in [1e3, 1e4]", "true", decreasing ? "true" : "false",
                            decreasing});
  summary.checks.push_back(within("mean QFI at r = 1e4", qfi_far, 1.0, 1e-2));

  const Crossing sw = locate_crossing(config, CrossingKind::DirectionSwitch);
  summary.checks.push_back(within("optimal-direction switch r*", sw.location, 2.3, 0.15));
  summary.checks.push_back({"direction before switch", "axis-x", sw.before, sw.before == "axis-x"});
  summary.notes.push_back("direction after switch: " + sw.after);
  summary.notes.push_back("all points use g = 2.5, gamma = 0.5");
  return summary;
}

FigureSummary reproduce_figure2(const std::filesystem::path& dir) {
  FigureSummary summary;
  summary.figure = 2;
  const SweepConfig config = figure2_config();
  const auto records = run_sweep(config);
  summary.csv_path = dir / "fig2.csv";
  summary.plot_path = dir / "fig2.gp";
  emit_csv(records, summary.csv_path);
  emit_plot_script(records, summary.plot_path, {"temperature parameter s", "non-dephasing, r = 10, omega = B = 1", ""});

  const std::size_t bad = std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok(); });
  summary.checks.push_back({"sweep records without error flag", std::to_string(records.size()),
                            std::to_string(records.size() - bad), bad == 0});

  constexpr double target = 0.193, tol = 0.01;
  bool matched = false;
  std::string best = "none";
  double best_gap = std::numeric_limits<double>::infinity();
  for (const double g : kFigure2Couplings) {
    SweepConfig scan = figure2_config(g);
    scan.step = 0.01;
    try {
      const double s_star = find_crossing(scan, CrossingKind::QfiEqualsOne);
      const double s_above = std::min(0.5, s_star + 0.01);
      const double neg_above = negativity(analytic_nondephasing(scan.params_at(s_above))).value;
      const bool hit = std::abs(s_star - target) <= tol && neg_above > 0.0;
      summary.notes.push_back("g = " + num(g, 3) + ": s* = " + num(s_star, 6) + ", negativity at s* + 0.01 = " +
                              num(neg_above, 6) + (hit ? " (matches)" : ""));
      if (std::abs(s_star - target) < best_gap) {
        best_gap = std::abs(s_star - target);
        best = "g = " + num(g, 3) + ", s* = " + num(s_star, 6) + ", negativity above = " + num(neg_above, 6);
      }
      matched = matched || hit;
    } catch (const Error& e) {
      summary.notes.push_back("g = " + num(g, 3) + ": " + e.what());
    }
  }
  summary.checks.push_back({"QFI = 1 crossing for some scanned g, with negativity > 0 just above",
                            num(target, 3) + " +- " + num(tol, 3), best, matched});
  summary.notes.push_back("the csv uses g = 2.5; the crossing check scans g over {0.5, 1, 2, 2.5, 3}");
  return summary;
}

}  // namespace

FigureSummary reproduce_figure(int which, const std::filesystem::path& output_dir) {
  if (which != 1 && which != 2) invalid("figure must be 1 or 2, got " + std::to_string(which));
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + output_dir.string() + ": " + ec.message());
  FigureSummary summary = which == 1 ? reproduce_figure1(output_dir) : reproduce_figure2(output_dir);
  summary.summary_path = output_dir / ("fig" + std::to_string(which) + "_summary.txt");
  write_file(summary.summary_path, summary.to_text());
  return summary;
}

}  // namespace openqfi
