#include "cavity/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace cavity {

SpinSector SpinSector::from_twice_j(int twice_j) {
  if (twice_j < 0) throw std::invalid_argument("spin sector: 2J must be >= 0");
  return SpinSector(twice_j);
}

SpinSector SpinSector::from_j(double j) {
  const double twice = 2.0 * j;
  const double rounded = std::round(twice);
  if (!(j >= 0.0) || std::abs(twice - rounded) > 1e-12) {
    throw std::invalid_argument("spin sector: J must be a non-negative multiple of 1/2");
  }
  return SpinSector(static_cast<int>(rounded));
}

SpinSector SpinSector::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return from_j(std::stod(text));
    std::size_t used = 0;
    const int num = std::stoi(text.substr(0, slash), &used);
    if (used != slash || text.substr(slash + 1) != "2") throw std::invalid_argument(text);
    return from_twice_j(num);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("spin sector: cannot parse J from '" + text + "'");
  }
}

std::string to_string(SpinSector sector) {
  if (sector.twice_j() % 2 == 0) return std::to_string(sector.twice_j() / 2);
  return std::to_string(sector.twice_j()) + "/2";
}

Eigen::MatrixXd jz_matrix(SpinSector sector) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sector.dim(), sector.dim());
  for (int i = 0; i < sector.dim(); ++i) out(i, i) = sector.m_of(i);
  return out;
}

namespace {

// <M+1|J_+|M> for the basis index of M.
double raising_element(SpinSector sector, int m_index) {
  const double j = sector.j();
  const double m = sector.m_of(m_index);
  return std::sqrt(j * (j + 1.0) - m * (m + 1.0));
}

}  // namespace

Eigen::MatrixXd minus_i_jy_matrix(SpinSector sector) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sector.dim(), sector.dim());
  for (int i = 0; i + 1 < sector.dim(); ++i) {
    const double c = 0.5 * raising_element(sector, i);
    out(i, i + 1) = c;
    out(i + 1, i) = -c;
  }
  return out;
}

Eigen::MatrixXd jx_matrix(SpinSector sector) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sector.dim(), sector.dim());
  for (int i = 0; i + 1 < sector.dim(); ++i) {
    const double c = 0.5 * raising_element(sector, i);
    out(i, i + 1) = c;
    out(i + 1, i) = c;
  }
  return out;
}

int parity_label(int fock, int m_index, SpinSector sector) {
  // J - M = 2J - m_index is an integer for every basis index.
  const int exponent = fock + sector.twice_j() - m_index;
  return (exponent % 2 == 0) ? 1 : -1;
}

bool sector_allowed(int n_atoms, SpinSector sector) {
  return n_atoms >= 0 && sector.twice_j() <= n_atoms && (n_atoms - sector.twice_j()) % 2 == 0;
}

std::int64_t sector_multiplicity(int n_atoms, SpinSector sector) {
  if (!sector_allowed(n_atoms, sector)) return 0;
  auto binomial = [](int n, int k) -> std::int64_t {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  const int lower = (n_atoms - sector.twice_j()) / 2;  // N/2 - J
  return binomial(n_atoms, lower) - binomial(n_atoms, lower - 1);
}

}  // namespace cavity
