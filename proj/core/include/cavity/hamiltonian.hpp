#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavity/special_fn.hpp"
#include "cavity/spin_algebra.hpp"

namespace cavity {

/// Physical inputs in units of the field frequency (omega = 1).
struct ModelParams {
  int n_atoms = 1;
  double delta = 1.0;     ///< transition frequency
  double coupling = 0.0;  ///< dimensionless coupling f
  SpinSector sector = SpinSector::from_twice_j(1);

  /// Main series J = N/2.
  static ModelParams main_series(int n_atoms, double delta, double coupling);

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

std::string describe(const ModelParams& params);

enum class Gauge { dipole, coulomb };

const char* to_string(Gauge gauge);

/// Inconsistency inside an assembled matrix (asymmetry, cross-parity leak).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Truncated Hamiltonian in the product basis |n> chi_{J,M}, 0 <= n <= n_max,
/// rows ordered n-major: row = n * (2J + 1) + m_index.
class HamiltonianMatrix {
 public:
  HamiltonianMatrix(ModelParams params, int n_max, Gauge gauge);

  const ModelParams& params() const { return params_; }
  int n_max() const { return n_max_; }
  Gauge gauge() const { return gauge_; }
  int spin_dim() const { return params_.sector.dim(); }
  int dim() const { return static_cast<int>(entries_.rows()); }

  int row(int fock, int m_index) const { return fock * spin_dim() + m_index; }
  int fock_of(int row) const { return row / spin_dim(); }
  int m_index_of(int row) const { return row % spin_dim(); }

  double operator()(int r, int c) const { return entries_(r, c); }
  /// Matrix element between |k> chi_{M index s} and |n> chi_{M index t}.
  double element(int k, int s, int n, int t) const { return entries_(row(k, s), row(n, t)); }

  const Eigen::MatrixXd& entries() const { return entries_; }
  Eigen::MatrixXd& mutable_entries() { return entries_; }
  const std::vector<int>& parity() const { return parity_; }

 private:
  ModelParams params_;
  int n_max_;
  Gauge gauge_;
  Eigen::MatrixXd entries_;
  std::vector<int> parity_;
};

/// a^+ a + (Delta/2) sigma_z + f (a + a^+) sigma_x + f^2. Requires N = 1.
HamiltonianMatrix build_qrm_dipole(const ModelParams& params, int n_max);

/// Coulomb-gauge Rabi Hamiltonian: block (k, n) is
///   n delta_kn I_2 + (Delta/2) S_kn [p sigma_z + q (-i sigma_y)],
///   p = ((-1)^n + (-1)^k)/2,  q = ((-1)^n - (-1)^k)/2.
HamiltonianMatrix build_qrm_coulomb(const ModelParams& params, int n_max,
                                    const OverlapTable& table);
HamiltonianMatrix build_qrm_coulomb(const ModelParams& params, int n_max);

/// Coulomb-gauge Dicke Hamiltonian in spin sector J: block (k, n) is
///   n delta_kn I + Delta S_kn [p J_z + q (-i J_y)].
HamiltonianMatrix build_dicke_coulomb(const ModelParams& params, int n_max,
                                      const OverlapTable& table);
HamiltonianMatrix build_dicke_coulomb(const ModelParams& params, int n_max);

/// Coulomb builder appropriate for the parameters (Rabi form for N = 1).
HamiltonianMatrix build_hamiltonian(const ModelParams& params, int n_max, Gauge gauge);

/// max |H - H^T|.
double symmetry_residual(const HamiltonianMatrix& h);

/// max |H_ij| over rows i, j with opposite parity labels.
double cross_parity_residual(const HamiltonianMatrix& h);

struct ParityBlock {
  int parity = 1;
  std::vector<int> rows;   ///< indices into the full matrix, ascending
  Eigen::MatrixXd matrix;  ///< H restricted to rows x rows
};

struct ParitySplit {
  ParityBlock even;  ///< label +1
  ParityBlock odd;   ///< label -1
  double cross_residual = 0.0;
};

/// Throws ConsistencyError when an entry couples opposite parity labels.
ParitySplit split_by_parity(const HamiltonianMatrix& h);

/// Writes "row,col,value" for every nonzero entry.
void write_matrix_csv(std::ostream& out, const HamiltonianMatrix& h);

}  // namespace cavity
