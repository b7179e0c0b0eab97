#include "openqfi/kernels.hpp"

namespace openqfi::kernels::scalar {

// Real/imaginary parts are accumulated separately so the compiler never goes
// through the Annex G complex multiply slow path.
void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const Complex* row = a + i * cols;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double ar = row[j].real(), ai = row[j].imag();
      const double xr = x[j].real(), xi = x[j].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    y[i] = Complex(re, im);
  }
}

void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real(), ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const Complex* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        crow[j] = Complex(crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br));
      }
    }
  }
}

}  // namespace openqfi::kernels::scalar
