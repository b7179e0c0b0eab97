#include "openqfi/metrics.hpp"

#include <cmath>

#include "openqfi/error.hpp"
#include "openqfi/linalg.hpp"
#include "openqfi/qubits.hpp"

namespace openqfi {

namespace {

using qubits::on_qubit;
using qubits::Qubit;

ComplexMatrix collective(const ComplexMatrix& sigma) {
  ComplexMatrix j = on_qubit(sigma, Qubit::First) + on_qubit(sigma, Qubit::Second);
  j *= 0.5;
  return j;
}

// <a| m |b>
Complex matrix_element(const ComplexMatrix& m, std::span<const Complex> a, std::span<const Complex> b) {
  const auto mb = matvec(m, b);
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * mb[i];
  return s;
}

QfiResult finish(const std::array<std::array<double, 3>, 3>& c, int n_particles) {
  QfiResult out;
  out.c_matrix = c;
  out.n_particles = n_particles;

  ComplexMatrix cm(3, 3);
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) cm(k, l) = c[k][l];
  const EigenDecomposition eig = hermitian_eig(cm);
  out.lambda_max = std::max(eig.eigenvalues[2], 0.0);
  out.mean_qfi = out.lambda_max / n_particles;
  out.degenerate = eig.eigenvalues[2] - eig.eigenvalues[1] < 1e-9;

  // Real input keeps Jacobi rotations real, so the imaginary parts are zero.
  Direction n{};
  double norm = 0.0;
  std::size_t dominant = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    n[k] = eig.eigenvectors(k, 2).real();
    norm += n[k] * n[k];
    if (std::abs(n[k]) > std::abs(n[dominant])) dominant = k;
  }
  norm = std::sqrt(norm);
  const double sign = n[dominant] < 0.0 ? -1.0 : 1.0;
  for (auto& x : n) x = sign * x / norm;
  out.optimal_direction = n;
  return out;
}

}  // namespace

CollectiveSpinOps CollectiveSpinOps::two_qubit() {
  return {collective(qubits::sigma_x()), collective(qubits::sigma_y()), collective(qubits::sigma_z())};
}

const ComplexMatrix& CollectiveSpinOps::operator[](std::size_t k) const {
  switch (k) {
    case 0: return jx;
    case 1: return jy;
    default: return jz;
  }
}

QfiResult qfi_c_matrix(const DensityMatrix& rho, const CollectiveSpinOps& ops) {
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const std::size_t n = eig.eigenvalues.size();

  // elements[k](i, j) = <i|J_k|j>
  std::array<ComplexMatrix, 3> elements;
  for (std::size_t k = 0; k < 3; ++k) elements[k] = eig.eigenvectors.adjoint() * ops[k] * eig.eigenvectors;

  std::array<std::array<double, 3>, 3> c{};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = k; l < 3; ++l) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          const double pi = eig.eigenvalues[i], pj = eig.eigenvalues[j];
          if (pi + pj <= kQfiWeightCutoff) continue;
          const double weight = (pi - pj) * (pi - pj) / (pi + pj);
          sum += weight * (elements[k](i, j) * elements[l](j, i) + elements[l](i, j) * elements[k](j, i));
        }
      }
      if (std::abs(sum.imag()) > 1e-10) {
        throw Error(ErrorKind::NotHermitian, "C matrix element has imaginary part " + format_number(sum.imag()));
      }
      c[k][l] = c[l][k] = sum.real();
    }
  }
  return finish(c, 2);
}

QfiResult qfi_pure(std::span<const Complex> state, const CollectiveSpinOps& ops) {
  if (state.size() != 4) throw Error(ErrorKind::BadDimension, "pure state must have 4 amplitudes");
  double norm = 0.0;
  for (const auto& a : state) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotNormalized, "<psi|psi> = " + format_number(norm));
  }
  std::array<double, 3> mean{};
  for (std::size_t k = 0; k < 3; ++k) mean[k] = matrix_element(ops[k], state, state).real();
  std::array<std::array<double, 3>, 3> c{};
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t l = k; l < 3; ++l) {
      const ComplexMatrix anti = ops[k] * ops[l] + ops[l] * ops[k];
      c[k][l] = c[l][k] = 2.0 * matrix_element(anti, state, state).real() - 4.0 * mean[k] * mean[l];
    }
  }
  return finish(c, 2);
}

double qfi_along(const DensityMatrix& rho, const Direction& n, const CollectiveSpinOps& ops) {
  const ComplexMatrix jn = Complex(n[0]) * ops.jx + Complex(n[1]) * ops.jy + Complex(n[2]) * ops.jz;
  const EigenDecomposition eig = hermitian_eig(rho.matrix());
  const ComplexMatrix elements = eig.eigenvectors.adjoint() * jn * eig.eigenvectors;
  double f = 0.0;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
      const double pi = eig.eigenvalues[i], pj = eig.eigenvalues[j];
      if (i == j || pi + pj <= kQfiWeightCutoff) continue;
      f += 2.0 * (pi - pj) * (pi - pj) / (pi + pj) * std::norm(elements(i, j));
    }
  }
  return f;
}

double quadratic_form(const QfiResult& result, const Direction& n) {
  double f = 0.0;
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t l = 0; l < 3; ++l) f += n[k] * result.c_matrix[k][l] * n[l];
  return f;
}

double NegativityResult::negative_sum() const {
  double s = 0.0;
  for (const double v : negative_eigenvalues) s -= v;
  return s;
}

NegativityResult negativity(const DensityMatrix& rho) {
  const ComplexMatrix pt = qubits::partial_transpose(rho.matrix(), qubits::Qubit::Second);
  const EigenDecomposition eig = hermitian_eig(pt);
  NegativityResult out;
  double trace_norm = 0.0;
  for (const double v : eig.eigenvalues) {
    trace_norm += std::abs(v);
    if (v < 0.0) out.negative_eigenvalues.push_back(v);
  }
  out.value = std::max(0.0, trace_norm - 1.0);
  return out;
}

std::string_view to_string(DirectionClass c) {
  switch (c) {
    case DirectionClass::AxisX: return "axis-x";
    case DirectionClass::AxisY: return "axis-y";
    case DirectionClass::AxisZ: return "axis-z";
    case DirectionClass::PlaneXY: return "xy-plane";
    case DirectionClass::PlaneXZ: return "xz-plane";
    case DirectionClass::PlaneYZ: return "yz-plane";
    case DirectionClass::General: return "xyz";
  }
  return "xyz";
}

DirectionClass classify_direction(const Direction& n) {
  constexpr double zero = 1e-6;
  const bool x = std::abs(n[0]) >= zero, y = std::abs(n[1]) >= zero, z = std::abs(n[2]) >= zero;
  if (x && !y && !z) return DirectionClass::AxisX;
  if (!x && y && !z) return DirectionClass::AxisY;
  if (!x && !y && z) return DirectionClass::AxisZ;
  if (x && y && !z) return DirectionClass::PlaneXY;
  if (x && !y && z) return DirectionClass::PlaneXZ;
  if (!x && y && z) return DirectionClass::PlaneYZ;
  return DirectionClass::General;
}

DirectionClass optimal_direction_label(const QfiResult& result) { return classify_direction(result.optimal_direction); }

}  // namespace openqfi
