// Compiled with -mavx2 -mfma; only reached through dispatch after a CPU check.

#include <immintrin.h>

#include "openqfi/kernels.hpp"

namespace openqfi::kernels::avx2 {

namespace {

// Two interleaved complex values per register: [re0 im0 re1 im1].
inline __m256d load2(const Complex* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline void store2(Complex* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

}  // namespace

void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  const std::size_t paired = cols & ~std::size_t{1};
  for (std::size_t i = 0; i < rows; ++i) {
    const Complex* row = a + i * cols;
    // acc_re collects (ar*xr, ar*xi), acc_im collects (ai*xi, ai*xr);
    // addsub at the end yields (ar*xr - ai*xi, ar*xi + ai*xr).
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t j = 0; j < paired; j += 2) {
      const __m256d av = load2(row + j);
      const __m256d xv = load2(x + j);
      const __m256d xswap = _mm256_permute_pd(xv, 0x5);
      acc_re = _mm256_fmadd_pd(_mm256_movedup_pd(av), xv, acc_re);
      acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0xF), xswap, acc_im);
    }
    const __m256d prod = _mm256_addsub_pd(acc_re, acc_im);
    __m128d sum = _mm_add_pd(_mm256_castpd256_pd128(prod), _mm256_extractf128_pd(prod, 1));
    double out[2];
    _mm_storeu_pd(out, sum);
    double re = out[0], im = out[1];
    if (paired != cols) {
      const double ar = row[paired].real(), ai = row[paired].imag();
      const double xr = x[paired].real(), xi = x[paired].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    y[i] = Complex(re, im);
  }
}

void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n) {
  const std::size_t paired = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    Complex* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real(), ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const Complex* brow = b + p * n;
      const __m256d are = _mm256_set1_pd(ar);
      const __m256d aim = _mm256_set1_pd(ai);
      for (std::size_t j = 0; j < paired; j += 2) {
        const __m256d bv = load2(brow + j);
        const __m256d bswap = _mm256_permute_pd(bv, 0x5);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_fmaddsub_pd(are, bv, _mm256_mul_pd(aim, bswap));
        store2(crow + j, _mm256_add_pd(load2(crow + j), prod));
      }
      if (paired != n) {
        const double br = brow[paired].real(), bi = brow[paired].imag();
        crow[paired] += Complex(ar * br - ai * bi, ar * bi + ai * br);
      }
    }
  }
}

}  // namespace openqfi::kernels::avx2
