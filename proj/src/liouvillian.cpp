#include "openqfi/liouvillian.hpp"

#include <cmath>
#include <string>

#include "openqfi/error.hpp"
#include "openqfi/qubits.hpp"

namespace openqfi {

using qubits::on_qubit;
using qubits::Qubit;

namespace {

void require_nonnegative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::InvalidParams, std::string(name) + " must be a finite value >= 0, got " +
                                              format_number(value));
  }
}

constexpr std::size_t kDim = 4;
constexpr std::size_t kSuperDim = kDim * kDim;

}  // namespace

void SystemParams::validate() const {
  require_nonnegative(g, "g");
  require_nonnegative(gamma, "gamma");
  require_nonnegative(r, "r");
  require_nonnegative(b_inversion, "b_inversion");
  require_nonnegative(polarization, "polarization");
  require_nonnegative(omega, "omega");
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorKind::InvalidParams, "s must lie in [0, 1], got " + format_number(s));
  }
  if (n_particles != 2) {
    throw Error(ErrorKind::InvalidParams, "only two particles are supported, got " + std::to_string(n_particles));
  }
}

SystemParams nondephasing_params(double g, double b_inversion, double s, double r) {
  SystemParams p;
  p.g = g;
  p.b_inversion = b_inversion;
  p.polarization = b_inversion / 2.0;
  p.omega = b_inversion;
  p.s = s;
  p.r = r;
  return p;
}

SystemParams dephasing_params(double g, double gamma, double r) {
  SystemParams p;
  p.g = g;
  p.gamma = gamma;
  p.r = r;
  return p;
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::Dephasing: return "dephasing";
    case Scenario::NonDephasing: return "non-dephasing";
    case Scenario::Custom: return "custom";
  }
  return "custom";
}

void ResetSpec::validate() const {
  const double norm = std::norm(reset_state[0]) + std::norm(reset_state[1]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidParams, "reset state must be normalized, <chi|chi> = " + format_number(norm));
  }
  require_nonnegative(rate, "reset rate");
}

namespace superop {

std::vector<Complex> vectorize(const ComplexMatrix& rho) {
  std::vector<Complex> v(rho.rows() * rho.cols());
  for (std::size_t j = 0; j < rho.cols(); ++j)
    for (std::size_t i = 0; i < rho.rows(); ++i) v[j * rho.rows() + i] = rho(i, j);
  return v;
}

ComplexMatrix unvectorize(std::span<const Complex> v) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) {
    throw Error(ErrorKind::BadDimension, "vector of length " + std::to_string(v.size()) + " is not a square matrix");
  }
  ComplexMatrix rho(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rho(i, j) = v[j * n + i];
  return rho;
}

ComplexMatrix left(const ComplexMatrix& a) { return kron(ComplexMatrix::identity(a.rows()), a); }

ComplexMatrix right(const ComplexMatrix& b) { return kron(b.transpose(), ComplexMatrix::identity(b.rows())); }

ComplexMatrix sandwich(const ComplexMatrix& a, const ComplexMatrix& b) { return kron(b.transpose(), a); }

ComplexMatrix commutator(const ComplexMatrix& h) { return -kI * (left(h) - right(h)); }

ComplexMatrix dissipator(const ComplexMatrix& jump) {
  const ComplexMatrix jdag = jump.adjoint();
  const ComplexMatrix number = jdag * jump;
  return sandwich(jump, jdag) - 0.5 * (left(number) + right(number));
}

}  // namespace superop

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  const auto v = superop::vectorize(rho);
  return superop::unvectorize(matvec(matrix, v));
}

double Liouvillian::trace_preservation_error() const {
  const std::size_t n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix.rows()))));
  double worst = 0.0;
  for (std::size_t col = 0; col < matrix.cols(); ++col) {
    Complex s = 0.0;
    for (std::size_t d = 0; d < n; ++d) s += matrix(d * n + d, col);
    worst = std::max(worst, std::abs(s));
  }
  return worst;
}

Liouvillian operator+(const Liouvillian& a, const Liouvillian& b) {
  return {a.matrix + b.matrix, a.scenario == b.scenario ? a.scenario : Scenario::Custom};
}

ComplexMatrix hamiltonian_dephasing(const SystemParams& params) {
  return Complex(params.g) * kron(qubits::sigma_z(), qubits::sigma_z());
}

ComplexMatrix hamiltonian_nondephasing(const SystemParams& params) {
  const ComplexMatrix free = on_qubit(qubits::sigma_z(), Qubit::First) + on_qubit(qubits::sigma_z(), Qubit::Second);
  return Complex(params.omega / 2.0) * free + Complex(params.g) * kron(qubits::sigma_x(), qubits::sigma_x());
}

Liouvillian dissipator_general(const SystemParams& params) {
  params.validate();
  const double b = params.b_inversion;
  const double dephasing_weight = (2.0 * params.polarization - b) / 4.0;
  if (dephasing_weight < 0.0) {
    throw Error(ErrorKind::NegativeRate, "2*polarization < B gives a negative dephasing weight (" +
                                             format_number(dephasing_weight) + ")");
  }
  const ComplexMatrix id = ComplexMatrix::identity(kSuperDim);
  ComplexMatrix total(kSuperDim, kSuperDim);
  for (const Qubit q : {Qubit::First, Qubit::Second}) {
    const ComplexMatrix sz = on_qubit(qubits::sigma_z(), q);
    total += Complex(b * (1.0 - params.s)) * superop::dissipator(on_qubit(qubits::sigma_minus(), q));
    total += Complex(b * params.s) * superop::dissipator(on_qubit(qubits::sigma_plus(), q));
    total += Complex(dephasing_weight) * (superop::sandwich(sz, sz) - id);
  }
  return {std::move(total), Scenario::Custom};
}

Liouvillian dissipator_dephasing(const SystemParams& params) {
  require_nonnegative(params.gamma, "gamma");
  const ComplexMatrix id = ComplexMatrix::identity(kSuperDim);
  ComplexMatrix total(kSuperDim, kSuperDim);
  for (const Qubit q : {Qubit::First, Qubit::Second}) {
    const ComplexMatrix sz = on_qubit(qubits::sigma_z(), q);
    total += Complex(params.gamma / 2.0) * (superop::sandwich(sz, sz) - id);
  }
  return {std::move(total), Scenario::Dephasing};
}

Liouvillian reset_channel(const ResetSpec& spec) {
  spec.validate();
  ComplexMatrix total(kSuperDim, kSuperDim);
  for (std::size_t k = 0; k < 2; ++k) {
    std::array<Complex, 2> basis{0.0, 0.0};
    basis[k] = 1.0;
    const ComplexMatrix lift = ComplexMatrix::outer(spec.reset_state, basis);  // |chi><k|
    for (const Qubit q : {Qubit::First, Qubit::Second}) {
      const ComplexMatrix kraus = on_qubit(lift, q);
      total += superop::sandwich(kraus, kraus.adjoint());
    }
  }
  total -= Complex(2.0) * ComplexMatrix::identity(kSuperDim);
  total *= spec.rate;
  return {std::move(total), Scenario::Custom};
}

Liouvillian build_liouvillian(const ComplexMatrix& h, const Liouvillian& noise, const Liouvillian& reset) {
  const std::size_t n = h.rows();
  if (!h.is_square() || noise.matrix.rows() != n * n || noise.matrix.cols() != n * n ||
      reset.matrix.rows() != n * n || reset.matrix.cols() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "Hamiltonian " + std::to_string(h.rows()) + "x" +
                                                  std::to_string(h.cols()) + " with noise " +
                                                  std::to_string(noise.matrix.rows()) + " and reset " +
                                                  std::to_string(reset.matrix.rows()));
  }
  return {superop::commutator(h) + noise.matrix + reset.matrix, Scenario::Custom};
}

std::array<Complex, 2> scenario_reset_state(Scenario scenario) {
  return scenario == Scenario::NonDephasing ? qubits::ket1() : qubits::ket_plus();
}

Liouvillian dephasing_liouvillian(const SystemParams& params) {
  params.validate();
  Liouvillian l = build_liouvillian(hamiltonian_dephasing(params), dissipator_dephasing(params),
                                    reset_channel({scenario_reset_state(Scenario::Dephasing), params.r}));
  l.scenario = Scenario::Dephasing;
  return l;
}

Liouvillian nondephasing_liouvillian(const SystemParams& params) {
  params.validate();
  if (params.s > 0.5) {
    throw Error(ErrorKind::InvalidParams,
                "non-dephasing scenario needs s in [0, 0.5] (beta >= 0), got " + format_number(params.s));
  }
  Liouvillian l = build_liouvillian(hamiltonian_nondephasing(params), dissipator_general(params),
                                    reset_channel({scenario_reset_state(Scenario::NonDephasing), params.r}));
  l.scenario = Scenario::NonDephasing;
  return l;
}

Liouvillian scenario_liouvillian(Scenario scenario, const SystemParams& params) {
  switch (scenario) {
    case Scenario::Dephasing: return dephasing_liouvillian(params);
    case Scenario::NonDephasing: return nondephasing_liouvillian(params);
    case Scenario::Custom: break;
  }
  throw Error(ErrorKind::InvalidParams, "custom scenarios have no canonical Liouvillian");
}

}  // namespace openqfi
