#pragma once

#include <array>
#include <vector>

#include "openqfi/matrix.hpp"

// Two-qubit conventions used throughout the library:
//   - qubit 1 is the left (most significant) tensor factor, so the basis order
//     |00>, |01>, |10>, |11> maps to matrix indices 0..3;
//   - sigma_z = diag(1, -1): |0> is the excited (+1) state, |1> the ground state;
//   - sigma_plus = |0><1| raises |1> -> |0>, sigma_minus = |1><0| lowers.
namespace openqfi::qubits {

enum class Qubit { First = 1, Second = 2 };

ComplexMatrix identity2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();

// Single-qubit operator acting on one qubit of the pair: op (x) I or I (x) op.
ComplexMatrix on_qubit(const ComplexMatrix& op, Qubit which);

std::array<Complex, 2> ket0();
std::array<Complex, 2> ket1();
std::array<Complex, 2> ket_plus();

// |ab> for single-qubit kets a, b.
std::vector<Complex> product_ket(std::span<const Complex> a, std::span<const Complex> b);

// (|00> + |11>) / sqrt(2)
std::vector<Complex> bell_phi_plus();

// |psi><psi|
ComplexMatrix projector(std::span<const Complex> psi);

// 2x2 reduced state after tracing out `traced`. Throws BadDimension unless rho is 4x4.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit traced);

// Transpose on the indices of `which` only. Throws BadDimension unless rho is 4x4.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Qubit which);

}  // namespace openqfi::qubits
