#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cavity/hamiltonian.hpp"

namespace cavity {

class EigenSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   ///< ascending
  Eigen::MatrixXd vectors;  ///< column i pairs with values[i]; empty if not requested
};

/// Dense real-symmetric eigenproblem. Throws std::invalid_argument when the
/// input deviates from its transpose by more than 1e-13 (relative to its
/// largest entry) and EigenSolveError when the iteration fails.
EigenDecomposition eig_symmetric(const Eigen::MatrixXd& m, bool want_vectors = true);

/// Eigen-levels of a truncated Hamiltonian, each tagged with its parity.
struct Spectrum {
  std::vector<double> eigenvalues;  ///< ascending, both sectors merged
  std::vector<int> parity;          ///< label of each level
  std::optional<Eigen::MatrixXd> eigenvectors;  ///< full-basis columns, same order
  int n_max_used = 0;
  bool converged = false;
  double max_shift = 0.0;  ///< largest watched-level change in the last doubling
  int watched = 0;

  /// Ascending levels of one parity sector.
  std::vector<double> sector(int parity_label) const;
};

/// Solves each parity sector of h separately and merges the results.
Spectrum solve_spectrum(const HamiltonianMatrix& h, bool want_vectors = false);

using HamiltonianBuilder = std::function<HamiltonianMatrix(int n_max)>;

/// Coulomb or dipole builder bound to fixed parameters.
HamiltonianBuilder make_builder(const ModelParams& params, Gauge gauge = Gauge::coulomb);

struct ConvergenceOptions {
  int watch = 12;          ///< lowest levels per sector that must settle
  double tol = 1e-8;       ///< in units of omega
  int n_max_start = 32;
  int n_max_cap = 1024;
  bool want_vectors = false;
};

/// Doubles the Fock cutoff until the lowest `watch` levels of each parity
/// sector move by at most tol. The returned spectrum is the one at the smaller
/// cutoff of the final pair, so it is stable under one further doubling.
/// Reaching n_max_cap without settling returns converged = false.
Spectrum converged_spectrum(const HamiltonianBuilder& builder, const ConvergenceOptions& options);

}  // namespace cavity
