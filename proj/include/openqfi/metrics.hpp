#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "openqfi/matrix.hpp"
#include "openqfi/steady_state.hpp"

namespace openqfi {

// Collective spin J_k = (sigma_k (x) I + I (x) sigma_k) / 2.
struct CollectiveSpinOps {
  ComplexMatrix jx;
  ComplexMatrix jy;
  ComplexMatrix jz;

  static CollectiveSpinOps two_qubit();
  const ComplexMatrix& operator[](std::size_t k) const;
};

using Direction = std::array<double, 3>;

struct QfiResult {
  std::array<std::array<double, 3>, 3> c_matrix{};
  double lambda_max = 0.0;
  // Unit eigenvector of lambda_max; sign fixed so the largest-magnitude component is positive.
  Direction optimal_direction{0.0, 0.0, 1.0};
  double mean_qfi = 0.0;  // lambda_max / N
  int n_particles = 2;
  // Top two eigenvalues of C within 1e-9: the direction is not unique.
  bool degenerate = false;
};

// Pairs with p_i + p_j <= this are left out of the QFI sum.
inline constexpr double kQfiWeightCutoff = 1e-12;

// Mixed-state C matrix from the eigendecomposition of rho.
QfiResult qfi_c_matrix(const DensityMatrix& rho, const CollectiveSpinOps& ops = CollectiveSpinOps::two_qubit());

// Pure-state C_kl = 2<J_k J_l + J_l J_k> - 4<J_k><J_l>. Throws NotNormalized.
QfiResult qfi_pure(std::span<const Complex> state, const CollectiveSpinOps& ops = CollectiveSpinOps::two_qubit());

// QFI along one direction, summed directly over eigenpairs:
// sum_{i != j} 2 (p_i - p_j)^2 / (p_i + p_j) |<i|J_n|j>|^2.
double qfi_along(const DensityMatrix& rho, const Direction& n,
                 const CollectiveSpinOps& ops = CollectiveSpinOps::two_qubit());

// n C n^T
double quadratic_form(const QfiResult& result, const Direction& n);

struct NegativityResult {
  // ||rho^{T_2}||_1 - 1, clipped at 0: 0 for separable states, 1 for Bell states.
  double value = 0.0;
  std::vector<double> negative_eigenvalues;

  // sum |lambda_neg| = value / 2 (the Vidal-Werner normalization).
  double negative_sum() const;
};

NegativityResult negativity(const DensityMatrix& rho);

enum class DirectionClass { AxisX, AxisY, AxisZ, PlaneXY, PlaneXZ, PlaneYZ, General };

std::string_view to_string(DirectionClass c);

// Components with magnitude below 1e-6 count as zero.
DirectionClass classify_direction(const Direction& n);

DirectionClass optimal_direction_label(const QfiResult& result);

}  // namespace openqfi
