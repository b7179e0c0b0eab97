#pragma once

// Dense complex kernels behind ComplexMatrix products and the RK4 integrator.
//
// Every kernel has a portable scalar reference in kernels::scalar. SIMD
// variants live in their own namespaces and are compiled with per-file ISA
// flags; the unqualified entry points pick one at first use based on what the
// running CPU reports. Setting OPENQFI_ISA=scalar in the environment pins the
// reference path.
//
// Storage is row-major, interleaved std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace openqfi::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

// True when the binary carries an AVX2 build and the CPU supports AVX2+FMA.
bool avx2_available();

// ISA selected for the unqualified entry points.
Isa active_isa();

// y[rows] = a[rows x cols] * x[cols]
void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y);

// c[m x n] = a[m x k] * b[k x n]
void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n);

namespace scalar {
void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y);
void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace scalar

#if defined(OPENQFI_WITH_AVX2)
namespace avx2 {
void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y);
void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n);
}  // namespace avx2
#endif

}  // namespace openqfi::kernels
