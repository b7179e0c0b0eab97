#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "openqfi/matrix.hpp"

namespace openqfi {

// Physical parameters of the two-qubit model (hbar = 1).
struct SystemParams {
  double g = 0.0;             // coupling strength
  double gamma = 0.0;         // dephasing strength
  double r = 0.0;             // reset rate
  double b_inversion = 0.0;   // inversion B of the general noise channel
  double polarization = 0.0;  // polarization of the general noise channel
  double omega = 0.0;         // level splitting
  double s = 0.0;             // temperature parameter, (e^{omega beta} + 1)^{-1}
  int n_particles = 2;

  // Nonnegative rates, s in [0, 1], exactly two particles. Throws InvalidParams.
  void validate() const;
};

// Parameters of the non-dephasing scenario: polarization = B/2 and omega = B.
SystemParams nondephasing_params(double g, double b_inversion, double s, double r);

// Parameters of the dephasing scenario.
SystemParams dephasing_params(double g, double gamma, double r);

enum class Scenario { Dephasing, NonDephasing, Custom };

std::string_view to_string(Scenario scenario);

struct ResetSpec {
  std::array<Complex, 2> reset_state;
  double rate = 0.0;

  // <chi|chi> = 1 within 1e-12 and rate >= 0. Throws InvalidParams.
  void validate() const;
};

// Superoperators act on column-stacked vec(rho): vec index j*n + i holds
// rho(i, j), so A rho B  ->  (B^T (x) A) vec(rho). Every superoperator in the
// library is built through the helpers below.
namespace superop {

std::vector<Complex> vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(std::span<const Complex> v);

// A rho
ComplexMatrix left(const ComplexMatrix& a);
// rho B
ComplexMatrix right(const ComplexMatrix& b);
// A rho B
ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b);
// -i [H, rho]
ComplexMatrix commutator(const ComplexMatrix& h);
// J rho J^dagger - {J^dagger J, rho} / 2
ComplexMatrix dissipator(const ComplexMatrix& jump);

}  // namespace superop

struct Liouvillian {
  ComplexMatrix matrix;  // 16 x 16
  Scenario scenario = Scenario::Custom;

  // L[rho] as a 4x4 matrix.
  ComplexMatrix apply(const ComplexMatrix& rho) const;

  // max_k |(vec(I)^dagger L)_k|; zero for trace-preserving generators.
  double trace_preservation_error() const;
};

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b);

ComplexMatrix hamiltonian_dephasing(const SystemParams& params);
ComplexMatrix hamiltonian_nondephasing(const SystemParams& params);

// Decay B(1-s) via sigma_minus, pumping B s via sigma_plus and dephasing
// (2 polarization - B)/4 via sigma_z on both qubits. Throws NegativeRate when
// 2 polarization < B.
Liouvillian dissipator_general(const SystemParams& params);

// (gamma/2) sum_i (sigma_z^i rho sigma_z^i - rho)
Liouvillian dissipator_dephasing(const SystemParams& params);

// r sum_i (|chi><chi|_i (x) tr_i rho - rho), realized as the operator sum
// sum_k (|chi><k| (x) I) rho (|k><chi| (x) I) plus its qubit-2 analogue.
Liouvillian reset_channel(const ResetSpec& spec);

// -i(I (x) H - H^T (x) I) + noise + reset. Throws DimensionMismatch.
Liouvillian build_liouvillian(const ComplexMatrix& h, const Liouvillian& noise, const Liouvillian& reset);

// Reset target used by each scenario: |+> for dephasing, the ground state |1> otherwise.
std::array<Complex, 2> scenario_reset_state(Scenario scenario);

// H = g sz(x)sz, dephasing noise, reset to |+>.
Liouvillian dephasing_liouvillian(const SystemParams& params);

// H = (omega/2)(sz(x)I + I(x)sz) + g sx(x)sx, general noise, reset to |1>.
// Requires s in [0, 0.5]. Throws InvalidParams / NegativeRate.
Liouvillian nondephasing_liouvillian(const SystemParams& params);

Liouvillian scenario_liouvillian(Scenario scenario, const SystemParams& params);

}  // namespace openqfi
