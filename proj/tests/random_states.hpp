#pragma once

// Seeded generators for property tests.

#include <cmath>
#include <random>
#include <vector>

#include "openqfi/matrix.hpp"
#include "openqfi/qubits.hpp"
#include "openqfi/steady_state.hpp"

namespace openqfi::testing {

class StateGenerator {
 public:
  explicit StateGenerator(std::uint64_t seed) : rng_(seed) {}

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex complex_normal() { return {normal(), normal()}; }

  ComplexMatrix ginibre(std::size_t rows, std::size_t cols) {
    ComplexMatrix g(rows, cols);
    for (auto& z : g.data()) z = complex_normal();
    return g;
  }

  ComplexMatrix hermitian(std::size_t n) { return hermitian_part(ginibre(n, n)); }

  ComplexMatrix density(std::size_t n) {
    const ComplexMatrix g = ginibre(n, n);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return hermitian_part(rho);
  }

  DensityMatrix two_qubit_state() { return {density(4), "random"}; }

  std::vector<Complex> pure(std::size_t n) {
    std::vector<Complex> psi(n);
    double norm = 0.0;
    for (auto& a : psi) {
      a = complex_normal();
      norm += std::norm(a);
    }
    for (auto& a : psi) a /= std::sqrt(norm);
    return psi;
  }

  DensityMatrix product_state() { return {kron(density(2), density(2)), "product"}; }

  // Gram-Schmidt on a Ginibre matrix.
  ComplexMatrix unitary(std::size_t n) {
    ComplexMatrix u = ginibre(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < j; ++k) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(u(i, k)) * u(i, j);
        for (std::size_t i = 0; i < n; ++i) u(i, j) -= dot * u(i, k);
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) norm += std::norm(u(i, j));
      for (std::size_t i = 0; i < n; ++i) u(i, j) /= std::sqrt(norm);
    }
    return u;
  }

  std::array<double, 3> direction() {
    std::array<double, 3> n{normal(), normal(), normal()};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (auto& x : n) x /= len;
    return n;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace openqfi::testing
