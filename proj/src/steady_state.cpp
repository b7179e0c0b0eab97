#include "openqfi/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "openqfi/kernels.hpp"
#include "openqfi/linalg.hpp"
#include "openqfi/qubits.hpp"

namespace openqfi {

namespace {

constexpr std::size_t kDim = 4;

std::string fmt(double v) { return format_number(v); }

ComplexMatrix validated(const ComplexMatrix& m) {
  if (m.rows() != kDim || m.cols() != kDim) {
    throw Error(ErrorKind::BadDimension,
                "density matrix must be 4x4, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double asym = hermiticity_error(m);
  if (!(asym <= DensityMatrix::kTolerance)) throw Error(ErrorKind::InvalidState, "not Hermitian: " + fmt(asym));
  ComplexMatrix h = hermitian_part(m);
  const double trace_error = std::abs(h.trace() - 1.0);
  if (!(trace_error <= DensityMatrix::kTolerance)) {
    throw Error(ErrorKind::InvalidState, "trace differs from 1 by " + fmt(trace_error));
  }
  const double smallest = hermitian_eig(h).eigenvalues.front();
  if (smallest < -DensityMatrix::kTolerance) {
    throw Error(ErrorKind::InvalidState, "negative eigenvalue " + fmt(smallest));
  }
  return h;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& matrix, std::string method)
    : matrix_(validated(matrix)), method_(std::move(method)) {}

DensityMatrix DensityMatrix::maximally_mixed() {
  return {Complex(0.25) * ComplexMatrix::identity(kDim), "maximally-mixed"};
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi, std::string method) {
  return {qubits::projector(psi), std::move(method)};
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::Analytic: return "analytic";
    case SolverKind::NullSpace: return "null-space";
    case SolverKind::Evolve: return "evolve";
  }
  return "analytic";
}

std::optional<SolverKind> parse_solver(std::string_view text) {
  if (text == "analytic") return SolverKind::Analytic;
  if (text == "null-space") return SolverKind::NullSpace;
  if (text == "evolve") return SolverKind::Evolve;
  return std::nullopt;
}

DensityMatrix analytic_dephasing(const SystemParams& params) {
  params.validate();
  const double g = params.g, gamma = params.gamma, r = params.r;
  const double half = r + gamma / 2.0;
  const double bracket = 2.0 * g * g + half * (r + gamma);
  if (r + gamma == 0.0 || bracket == 0.0) {
    throw Error(ErrorKind::DegenerateDenominator, "closed form undefined at r + gamma = 0");
  }
  const double corner = r * r * half / (4.0 * (r + gamma) * bracket);
  const Complex single = r * Complex(half, -g) / (4.0 * bracket);

  ComplexMatrix rho(kDim, kDim);
  for (std::size_t i = 0; i < kDim; ++i) rho(i, i) = 0.25;
  rho(0, 3) = rho(1, 2) = rho(2, 1) = rho(3, 0) = corner;
  rho(0, 1) = rho(0, 2) = rho(3, 1) = rho(3, 2) = single;
  rho(1, 0) = rho(1, 3) = rho(2, 0) = rho(2, 3) = std::conj(single);
  return {rho, "analytic"};
}

DensityMatrix analytic_nondephasing(const SystemParams& params) {
  params.validate();
  const double b = params.b_inversion, g = params.g, s = params.s, r = params.r, w = params.omega;
  if (!close(params.polarization, b / 2.0) || !close(w, b)) {
    throw Error(ErrorKind::InvalidParams, "closed form needs polarization = B/2 and omega = B");
  }
  if (s > 0.5) throw Error(ErrorKind::InvalidParams, "closed form needs s in [0, 0.5], got " + fmt(s));

  const double br = b + r;
  const double b2r = b + 2.0 * r;
  const double w2 = 4.0 * w * w;  // (2 omega)^2 for H_free = (omega/2) sum sigma_z
  const double core = br * w2 + b2r * (4.0 * g * g + br * b2r);
  const double denom = br * core;
  if (core == 0.0 || denom == 0.0) {
    throw Error(ErrorKind::DegenerateDenominator, "closed form undefined at B + r = 0");
  }

  const double p11 = (b * b * s * s * w2 + b2r * (br * g * g + b * b * b2r * s * s)) / denom;
  const double p22 = (b2r * (br * g * g - b * b * b2r * s * s + b * br * b2r * s) - b * s * (s * b - b - r) * w2) / denom;
  const double decay = b * (1.0 - s) + r;
  const double p44 =
      (decay * decay * w2 + b2r * (b * b * b2r * s * s - 2.0 * b * br * b2r * s + br * (g * g + br * b2r))) / denom;
  const Complex p41 = g * (2.0 * s * b - b - r) * Complex(2.0 * w, -b2r) / core;

  ComplexMatrix rho(kDim, kDim);
  rho(0, 0) = p11;
  rho(1, 1) = p22;
  rho(2, 2) = p22;
  rho(3, 3) = p44;
  rho(3, 0) = p41;
  rho(0, 3) = std::conj(p41);
  return {rho, "analytic"};
}

DensityMatrix analytic_steady_state(Scenario scenario, const SystemParams& params) {
  switch (scenario) {
    case Scenario::Dephasing: return analytic_dephasing(params);
    case Scenario::NonDephasing: return analytic_nondephasing(params);
    case Scenario::Custom: break;
  }
  throw Error(ErrorKind::InvalidParams, "no closed form for custom scenarios");
}

DensityMatrix solve_null_space(const Liouvillian& l, const NullSpaceOptions& options) {
  const std::size_t n2 = l.matrix.rows();
  if (n2 != kDim * kDim || l.matrix.cols() != n2) {
    throw Error(ErrorKind::BadDimension, "Liouvillian must be 16x16, got " + std::to_string(n2));
  }

  const SingularValueDecomposition spectrum = jacobi_svd(l.matrix);
  const double largest = spectrum.singular_values.front();
  const double second_smallest = spectrum.singular_values[n2 - 2];
  if (largest == 0.0 || second_smallest < options.degeneracy_threshold * largest) {
    throw Error(ErrorKind::DegenerateSteadyState, "stationary space has dimension > 1 (sigma_{n-1}/sigma_max = " +
                                                      fmt(largest == 0.0 ? 0.0 : second_smallest / largest) + ")");
  }

  ComplexMatrix augmented(n2 + 1, n2);
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) augmented(i, j) = l.matrix(i, j);
  for (std::size_t d = 0; d < kDim; ++d) augmented(n2, d * kDim + d) = 1.0;
  std::vector<Complex> rhs(n2 + 1, 0.0);
  rhs[n2] = 1.0;

  const auto x = least_squares(jacobi_svd(augmented), rhs);
  ComplexMatrix rho = superop::unvectorize(x);
  const double residual = max_abs(matvec(l.matrix, x));
  if (!(residual <= options.max_residual)) {
    throw Error(ErrorKind::NoConvergence, "null-space residual " + fmt(residual) + " exceeds " +
                                              fmt(options.max_residual));
  }
  rho = hermitian_part(rho);
  rho *= 1.0 / rho.trace();
  return {rho, "null-space"};
}

double default_time_step(const Liouvillian& l) {
  return std::min(0.5 / std::max(l.matrix.max_abs(), 1.0), 1e-2);
}

double default_horizon(const SystemParams& params) {
  double slowest = std::numeric_limits<double>::infinity();
  for (const double rate : {params.gamma, params.r, params.b_inversion})
    if (rate > 0.0) slowest = std::min(slowest, rate);
  return std::isfinite(slowest) ? 200.0 / slowest : 200.0;
}

EvolveResult evolve_to_steady(const Liouvillian& l, const DensityMatrix& rho0, const EvolveOptions& options) {
  if (!(options.dt > 0.0) || !(options.t_max > 0.0)) {
    throw Error(ErrorKind::InvalidParams, "evolve needs dt > 0 and t_max > 0");
  }
  const std::size_t n2 = l.matrix.rows();
  if (n2 != kDim * kDim || l.matrix.cols() != n2) {
    throw Error(ErrorKind::BadDimension, "Liouvillian must be 16x16, got " + std::to_string(n2));
  }

  const Complex* lm = l.matrix.data().data();
  const double dt = options.dt;
  std::vector<Complex> y = superop::vectorize(rho0.matrix());
  std::vector<Complex> k1(n2), k2(n2), k3(n2), k4(n2), tmp(n2), next(n2);

  EvolveResult result{rho0, 0.0, 0, 0.0};
  bool converged = false;
  while (result.time < options.t_max) {
    kernels::cmatvec(lm, n2, n2, y.data(), k1.data());
    for (std::size_t i = 0; i < n2; ++i) tmp[i] = y[i] + (0.5 * dt) * k1[i];
    kernels::cmatvec(lm, n2, n2, tmp.data(), k2.data());
    for (std::size_t i = 0; i < n2; ++i) tmp[i] = y[i] + (0.5 * dt) * k2[i];
    kernels::cmatvec(lm, n2, n2, tmp.data(), k3.data());
    for (std::size_t i = 0; i < n2; ++i) tmp[i] = y[i] + dt * k3[i];
    kernels::cmatvec(lm, n2, n2, tmp.data(), k4.data());
    for (std::size_t i = 0; i < n2; ++i) next[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    Complex trace = 0.0;
    for (std::size_t d = 0; d < kDim; ++d) trace += next[d * kDim + d];
    result.max_trace_drift = std::max(result.max_trace_drift, std::abs(trace - 1.0));
    double change = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      next[i] /= trace;
      change = std::max(change, std::abs(next[i] - y[i]));
    }
    y.swap(next);
    result.time += dt;
    ++result.steps;
    if (change / dt <= options.stationarity_tol) {
      converged = true;
      break;
    }
  }

  DensityMatrix state(superop::unvectorize(y), "evolve");
  if (!converged) {
    throw NotConvergedError("no stationary state within t_max = " + fmt(options.t_max), std::move(state));
  }
  result.state = std::move(state);
  return result;
}

double steady_state_residual(const Liouvillian& l, const DensityMatrix& rho) {
  return max_abs(matvec(l.matrix, superop::vectorize(rho.matrix())));
}

}  // namespace openqfi
