#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "cavity/hamiltonian.hpp"

namespace cavity {

// Operator-method approximations. Everything here reads matrix elements from
// an assembled Coulomb-gauge HamiltonianMatrix whose cutoff covers the states
// involved; the ModelParams overloads build that matrix themselves.

enum class ApproxMethod { diag0, pair0, multi0, pairwise_quad, second_order };

const char* to_string(ApproxMethod method);
/// Throws std::invalid_argument for unknown names.
ApproxMethod parse_approx_method(const std::string& name);

struct ApproxLevel {
  int n = 0;       ///< multiplet / pair index
  int branch = 0;  ///< position inside the multiplet (QRM pairs: -1 lower, +1 upper)
  int parity = 1;
  double energy = 0.0;
  std::vector<double> coefficients;  ///< A, B, C, D... when the method defines them
};

struct ApproxResult {
  ApproxMethod method = ApproxMethod::diag0;
  std::vector<ApproxLevel> levels;

  /// Ascending energies of one parity sector.
  std::vector<double> sector(int parity_label) const;
};

// ---------------------------------------------------------------- Rabi model

/// Diagonal element H_{ns,ns}, s = +1 (up) or -1 (down).
double qrm_zeroth_diag(const HamiltonianMatrix& h, int n, int s);
double qrm_zeroth_diag(const ModelParams& params, int n, int s);

struct PairState {
  double energy = 0.0;
  double a = 0.0;  ///< weight of |n> chi_up
  double b = 0.0;  ///< weight of |n+1> chi_down, chosen >= 0
};

struct QrmPair {
  PairState lower;  ///< "-" branch
  PairState upper;  ///< "+" branch
  double gap = 0.0;

  const PairState& branch(int r) const { return r > 0 ? upper : lower; }
};

/// Diagonalizes the 2x2 block over |n> chi_up, |n+1> chi_down.
QrmPair qrm_pair(const HamiltonianMatrix& h, int n);
QrmPair qrm_pair(const ModelParams& params, int n);

/// The same pair from the explicit mean +- gap/2 formula, with
/// A = -gamma / sqrt(1 + gamma^2), B = 1 / sqrt(1 + gamma^2). Uses overlap_s
/// directly, not the assembled matrix.
QrmPair qrm_pair_closed_form(const ModelParams& params, int n);

struct SingularTerm {
  int fock = 0;
  int m_index = 0;
  double numerator = 0.0;
  double denominator = 0.0;
};

struct SecondOrderResult {
  double zeroth = 0.0;
  double correction = 0.0;
  double energy = 0.0;
  /// Magnitude of the contributions from the last Fock shell summed.
  double tail_estimate = 0.0;
  /// Terms whose denominator fell below 1e-10; excluded from `correction`.
  std::vector<SingularTerm> singular_terms;
};

inline constexpr double kSingularDenominator = 1e-10;

/// Ground state |0> chi_{J,-J} plus the second-order sum over all basis
/// states with Fock index <= k_max, using elements of the full Hamiltonian.
SecondOrderResult second_order_ground(const HamiltonianMatrix& h, int k_max);

SecondOrderResult qrm_second_order_ground(const HamiltonianMatrix& h, int k_max);
SecondOrderResult qrm_second_order_ground(const ModelParams& params, int k_max);

/// Level r = +1 / -1 of pair n, corrected by the coupling to the partner
/// branch (F_nr) and to every other basis state up to k_max.
SecondOrderResult qrm_second_order_excited(const HamiltonianMatrix& h, int n, int r, int k_max);
SecondOrderResult qrm_second_order_excited(const ModelParams& params, int n, int r, int k_max);

// ------------------------------------------------ degenerate multiplets (any J)

/// Rows |n-j> chi_{J,-J+j}, j = 0..min(n, 2J): the states sharing energy
/// n - J*Delta at f = 0 when Delta = 1. All carry parity (-1)^(n+2J).
std::vector<int> multiplet_rows(const HamiltonianMatrix& h, int n);

struct Multiplet {
  int n = 0;
  int parity = 1;
  std::vector<int> rows;
  Eigen::VectorXd energies;      ///< ascending
  Eigen::MatrixXd coefficients;  ///< column p is the normalized combination for energies[p]
};

/// Eigen-pairs of H restricted to multiplet_rows(h, n). The j = 0 component
/// of every coefficient column is made non-negative.
Multiplet degenerate_multiplet(const HamiltonianMatrix& h, int n);

/// Two-atom J = 1 diagonal n + M (-1)^n Delta S_nn, read from the matrix.
double dicke2_zeroth(const HamiltonianMatrix& h, int n, int m_proj);
double dicke2_zeroth(const ModelParams& params, int n, int m_proj);

Multiplet dicke2_multi(const HamiltonianMatrix& h, int n);
Multiplet dicke2_multi(const ModelParams& params, int n);
Multiplet dicke3_multi(const HamiltonianMatrix& h, int n);
Multiplet dicke3_multi(const ModelParams& params, int n);

/// {E-, E+} = ((a + b) -+ sqrt((a - b)^2 + 4 c^2)) / 2.
std::pair<double, double> quadratic_roots(double a, double b, double c);

/// Chain of 2x2 neighbours inside multiplet n (requires n >= 2J >= 1):
///   E_1 = E+_1,  E_i = (E-_{i-1} + E+_i) / 2,  E_{2J+1} = E-_{2J}.
/// Returned in that order, not sorted.
std::vector<double> pairwise_quadratic(const HamiltonianMatrix& h, int n);

std::vector<double> dicke2_pairwise_quad(const HamiltonianMatrix& h, int n);
std::vector<double> dicke2_pairwise_quad(const ModelParams& params, int n);
std::vector<double> dicke3_pairwise_quad(const HamiltonianMatrix& h, int n);
std::vector<double> dicke3_pairwise_quad(const ModelParams& params, int n);

/// All levels a method produces for multiplets 0..n_top (QRM pairs 0..n_top-1
/// plus the ground state). n_top must not exceed h.n_max().
ApproxResult approximate_levels(const HamiltonianMatrix& h, ApproxMethod method, int n_top);

}  // namespace cavity
