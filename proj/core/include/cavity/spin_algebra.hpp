#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>

namespace cavity {

/// Total-spin sector J of a collective spin, stored as the integer 2J.
/// Basis order is M = -J, -J+1, ..., +J, so index 0 holds M = -J.
class SpinSector {
 public:
  constexpr SpinSector() = default;
  static SpinSector from_twice_j(int twice_j);
  /// Accepts J as a double that must be a non-negative multiple of 1/2.
  static SpinSector from_j(double j);
  /// Parses "1", "1.5", "3/2".
  static SpinSector parse(const std::string& text);

  constexpr int twice_j() const { return twice_j_; }
  constexpr double j() const { return 0.5 * twice_j_; }
  constexpr int dim() const { return twice_j_ + 1; }

  /// Projection M for basis index m_index (0 <= m_index < dim).
  constexpr double m_of(int m_index) const { return m_index - 0.5 * twice_j_; }

  friend constexpr bool operator==(SpinSector a, SpinSector b) { return a.twice_j_ == b.twice_j_; }

 private:
  constexpr explicit SpinSector(int twice_j) : twice_j_(twice_j) {}
  int twice_j_ = 0;
};

std::string to_string(SpinSector sector);

Eigen::MatrixXd jz_matrix(SpinSector sector);

/// Real antisymmetric matrix -i J_y = (J_- - J_+) / 2.
Eigen::MatrixXd minus_i_jy_matrix(SpinSector sector);

/// Real symmetric J_x = (J_+ + J_-) / 2.
Eigen::MatrixXd jx_matrix(SpinSector sector);

/// Eigenvalue of the combined parity exp(i pi a^+ a) exp(i pi (J - J_z)) on
/// |n> chi_{J,M}: (-1)^(n + J - M). For J = 1/2 this is sigma_z (-1)^n with
/// parity(0, up) = +1.
int parity_label(int fock, int m_index, SpinSector sector);

/// Number of times spin J occurs in the product of n_atoms spin-1/2 systems.
std::int64_t sector_multiplicity(int n_atoms, SpinSector sector);

/// True when J is one of N/2, N/2 - 1, ... >= 0.
bool sector_allowed(int n_atoms, SpinSector sector);

}  // namespace cavity
