#include "openqfi/qubits.hpp"

#include <cmath>

#include "openqfi/error.hpp"

namespace openqfi::qubits {

namespace {

void require_two_qubit(const ComplexMatrix& rho, const char* op) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw Error(ErrorKind::BadDimension, std::string(op) + " expects a 4x4 matrix, got " +
                                             std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
}

}  // namespace

ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, -kI}, {kI, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
ComplexMatrix sigma_plus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
ComplexMatrix sigma_minus() { return {{0.0, 0.0}, {1.0, 0.0}}; }

ComplexMatrix on_qubit(const ComplexMatrix& op, Qubit which) {
  return which == Qubit::First ? kron(op, identity2()) : kron(identity2(), op);
}

std::array<Complex, 2> ket0() { return {1.0, 0.0}; }
std::array<Complex, 2> ket1() { return {0.0, 1.0}; }
std::array<Complex, 2> ket_plus() { return {M_SQRT1_2, M_SQRT1_2}; }

std::vector<Complex> product_ket(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

std::vector<Complex> bell_phi_plus() { return {M_SQRT1_2, 0.0, 0.0, M_SQRT1_2}; }

ComplexMatrix projector(std::span<const Complex> psi) { return ComplexMatrix::outer(psi, psi); }

// rho indices: row = 2*a + b, col = 2*c + d with (a, c) on qubit 1, (b, d) on qubit 2.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit traced) {
  require_two_qubit(rho, "partial_trace");
  ComplexMatrix out(2, 2);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t k = 0; k < 2; ++k) {
        out(x, y) += traced == Qubit::First ? rho(2 * k + x, 2 * k + y) : rho(2 * x + k, 2 * y + k);
      }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Qubit which) {
  require_two_qubit(rho, "partial_transpose");
  ComplexMatrix out(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          const Complex v = rho(2 * a + b, 2 * c + d);
          if (which == Qubit::First)
            out(2 * c + b, 2 * a + d) = v;
          else
            out(2 * a + d, 2 * c + b) = v;
        }
  return out;
}

}  // namespace openqfi::qubits
