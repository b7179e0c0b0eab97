#include <cstdlib>
#include <string_view>

#include "openqfi/kernels.hpp"

namespace openqfi::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool avx2_available() {
#if defined(OPENQFI_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* forced = std::getenv("OPENQFI_ISA"); forced && std::string_view(forced) == "scalar") {
    return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

struct Table {
  decltype(&scalar::cmatvec) matvec;
  decltype(&scalar::cgemm) gemm;
  Isa isa;
};

const Table& table() {
  static const Table t = [] {
    const Isa isa = detect();
#if defined(OPENQFI_WITH_AVX2)
    if (isa == Isa::Avx2) return Table{&avx2::cmatvec, &avx2::cgemm, isa};
#endif
    return Table{&scalar::cmatvec, &scalar::cgemm, Isa::Scalar};
  }();
  return t;
}

}  // namespace

Isa active_isa() { return table().isa; }

void cmatvec(const Complex* a, std::size_t rows, std::size_t cols, const Complex* x, Complex* y) {
  table().matvec(a, rows, cols, x, y);
}

void cgemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k, std::size_t n) {
  table().gemm(a, b, c, m, k, n);
}

}  // namespace openqfi::kernels
