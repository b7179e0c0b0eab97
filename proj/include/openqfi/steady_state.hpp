#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "openqfi/error.hpp"
#include "openqfi/liouvillian.hpp"
#include "openqfi/matrix.hpp"

namespace openqfi {

// Two-qubit density matrix. Construction checks Hermiticity, unit trace and
// positivity (smallest eigenvalue >= -1e-10); the stored matrix is the
// Hermitian part of the input.
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  DensityMatrix(const ComplexMatrix& matrix, std::string method);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::string& method() const noexcept { return method_; }
  Complex operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

  static DensityMatrix maximally_mixed();
  static DensityMatrix pure(std::span<const Complex> psi, std::string method = "pure");

 private:
  ComplexMatrix matrix_;
  std::string method_;
};

enum class SolverKind { Analytic, NullSpace, Evolve };

std::string_view to_string(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view text);

// Closed-form dephasing steady state: uniform populations 1/4, real corner
// coherences (rho_14 group) and complex single-flip coherences (rho_12 group).
// Throws DegenerateDenominator when r + gamma = 0.
DensityMatrix analytic_dephasing(const SystemParams& params);

// Closed-form non-dephasing steady state (X-shaped: diagonal plus the
// rho_14 / rho_41 corner). Requires polarization = B/2, omega = B, s in [0, 0.5].
DensityMatrix analytic_nondephasing(const SystemParams& params);

DensityMatrix analytic_steady_state(Scenario scenario, const SystemParams& params);

struct NullSpaceOptions {
  // Second-smallest singular value of L below this fraction of the largest -> degenerate.
  double degeneracy_threshold = 1e-8;
  double max_residual = 1e-9;
};

// Least-squares solve of [L; vec(I)^dagger] vec(rho) = [0; 1].
// Throws DegenerateSteadyState / NoConvergence.
DensityMatrix solve_null_space(const Liouvillian& l, const NullSpaceOptions& options = {});

struct EvolveOptions {
  double t_max = 0.0;
  double dt = 0.0;
  // Stop once max|rho(t+dt) - rho(t)| / dt drops to this.
  double stationarity_tol = 1e-11;
};

// dt = 0.5 / max(max|L_ij|, 1), capped at 1e-2.
double default_time_step(const Liouvillian& l);

// 200 / (smallest positive rate among gamma, r, B); 200 when none is positive.
double default_horizon(const SystemParams& params);

class NotConvergedError : public Error {
 public:
  NotConvergedError(const std::string& message, DensityMatrix last_state)
      : Error(ErrorKind::NotConverged, message), last_state_(std::move(last_state)) {}

  const DensityMatrix& last_state() const noexcept { return last_state_; }

 private:
  DensityMatrix last_state_;
};

struct EvolveResult {
  DensityMatrix state;
  double time = 0.0;
  std::size_t steps = 0;
  // Largest |tr(rho) - 1| seen after a step, before renormalization.
  double max_trace_drift = 0.0;
};

// Classical RK4 on vec(rho), trace renormalized every step.
// Throws NotConvergedError (carrying the final state) when t_max is reached first.
EvolveResult evolve_to_steady(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& options);

// max|L vec(rho)|
double steady_state_residual(const Liouvillian& l, const DensityMatrix& rho);

}  // namespace openqfi
