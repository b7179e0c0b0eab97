#include <doctest.h>

#include <random>
#include <vector>

#include "openqfi/kernels.hpp"

using openqfi::kernels::Complex;
namespace kernels = openqfi::kernels;

namespace {

std::vector<Complex> random_values(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<Complex> v(n);
  for (auto& z : v) z = Complex(d(rng), d(rng));
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar cmatvec matches a hand-expanded product") {
  const std::vector<Complex> a{{1, 2}, {0, -1}, {3, 0}, {0.5, 0.5}};
  const std::vector<Complex> x{{1, 1}, {2, -1}};
  std::vector<Complex> y(2);
  kernels::scalar::cmatvec(a.data(), 2, 2, x.data(), y.data());
  // (1+2i)(1+i) + (-i)(2-i) = (-1+3i) + (-1-2i)
  CHECK(y[0] == Complex(-2, 1));
  // 3(1+i) + (0.5+0.5i)(2-i) = (3+3i) + (1.5+0.5i)
  CHECK(y[1] == Complex(4.5, 3.5));
}

TEST_CASE("scalar cgemm reproduces matvec column by column") {
  std::mt19937_64 rng(11);
  const std::size_t m = 5, k = 7, n = 3;
  const auto a = random_values(m * k, rng);
  const auto b = random_values(k * n, rng);
  std::vector<Complex> c(m * n);
  kernels::scalar::cgemm(a.data(), b.data(), c.data(), m, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> col(k), y(m);
    for (std::size_t p = 0; p < k; ++p) col[p] = b[p * n + j];
    kernels::scalar::cmatvec(a.data(), m, k, col.data(), y.data());
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(y[i] - c[i * n + j]) < 1e-13);
  }
}

TEST_CASE("dispatch reports a usable ISA") {
  const auto isa = kernels::active_isa();
  if (kernels::avx2_available() && std::getenv("OPENQFI_ISA") == nullptr) {
    CHECK(isa == kernels::Isa::Avx2);
  } else {
    CHECK(isa == kernels::Isa::Scalar);
  }
  MESSAGE("active ISA: " << kernels::to_string(isa));
}

#if defined(OPENQFI_WITH_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::avx2_available()) {
    MESSAGE("CPU lacks AVX2/FMA; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(2024);
  for (std::size_t rows = 1; rows <= 17; ++rows) {
    for (std::size_t cols = 1; cols <= 17; ++cols) {
      const auto a = random_values(rows * cols, rng);
      const auto x = random_values(cols, rng);
      std::vector<Complex> ref(rows), simd(rows);
      kernels::scalar::cmatvec(a.data(), rows, cols, x.data(), ref.data());
      kernels::avx2::cmatvec(a.data(), rows, cols, x.data(), simd.data());
      REQUIRE(max_diff(ref, simd) <= 1e-13 * static_cast<double>(cols));

      const std::size_t n = 1 + (rows + cols) % 6;
      const auto b = random_values(cols * n, rng);
      std::vector<Complex> cref(rows * n), csimd(rows * n);
      kernels::scalar::cgemm(a.data(), b.data(), cref.data(), rows, cols, n);
      kernels::avx2::cgemm(a.data(), b.data(), csimd.data(), rows, cols, n);
      REQUIRE(max_diff(cref, csimd) <= 1e-13 * static_cast<double>(cols));
    }
  }
}

TEST_CASE("avx2 kernels are exact on small integer inputs") {
  if (!kernels::avx2_available()) return;
  std::vector<Complex> a(16 * 16), x(16);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = Complex(static_cast<double>(i % 7) - 3, static_cast<double>(i % 5));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = Complex(static_cast<double>(i % 3), -static_cast<double>(i % 4));
  std::vector<Complex> ref(16), simd(16);
  kernels::scalar::cmatvec(a.data(), 16, 16, x.data(), ref.data());
  kernels::avx2::cmatvec(a.data(), 16, 16, x.data(), simd.data());
  CHECK(ref == simd);
}
#endif
