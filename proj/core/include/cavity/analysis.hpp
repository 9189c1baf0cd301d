#pragma once

#include <string>
#include <vector>

#include "cavity/approx_om.hpp"
#include "cavity/eigensolve.hpp"
#include "cavity/hamiltonian.hpp"

namespace cavity {

/// `points` evenly spaced couplings from f_min to f_max inclusive.
std::vector<double> linear_grid(double f_min, double f_max, int points);

// ------------------------------------------------------------------- sweeps

struct SweepOptions {
  std::vector<double> f_grid;
  std::vector<ApproxMethod> methods;
  int levels = 8;  ///< lowest levels reported per parity sector
  ConvergenceOptions convergence;
  int threads = 1;
};

/// One CSV row: f, sector_J, parity, level_index, method, energy.
struct LevelRow {
  double f = 0.0;
  SpinSector sector;
  int parity = 1;
  int level_index = 0;
  std::string method;
  double energy = 0.0;
};

struct LevelError {
  ApproxMethod method = ApproxMethod::diag0;
  int parity = 1;
  int level_index = 0;
  double error = 0.0;  ///< |approx - numeric|
};

struct SweepPoint {
  double f = 0.0;
  Spectrum numeric;
  std::vector<ApproxResult> approx;
  std::vector<LevelError> errors;
};

struct SweepResult {
  ModelParams params;
  std::vector<ApproxMethod> methods;
  int levels = 0;
  std::vector<SweepPoint> points;

  /// Rows in grid order; per point: numeric first, then methods in request
  /// order, parity +1 before -1, ascending level index.
  std::vector<LevelRow> rows() const;
  double max_error(ApproxMethod method) const;
  bool all_converged() const;
};

/// Converged numerics plus each requested approximation at every grid point.
/// Approximate levels are matched to numeric ones by sorted index inside the
/// same parity sector. Points are computed concurrently when threads > 1;
/// results do not depend on the thread count.
SweepResult sweep(const ModelParams& params, const SweepOptions& options);

// ------------------------------------------------------- gauge equivalence

struct GaugeReport {
  double f = 0.0;
  std::vector<int> n_max;
  std::vector<double> deviation;  ///< max |dipole - coulomb| over watched levels, per cutoff
  std::vector<double> dipole;     ///< lowest levels at the last cutoff
  std::vector<double> coulomb;
  std::vector<int> dipole_parity;
  std::vector<int> coulomb_parity;
  bool monotone = true;
  double final_deviation = 0.0;
};

/// Deviations below this are rounding noise and do not count against monotonicity.
inline constexpr double kRoundoffFloor = 1e-12;

/// n_max = start, 2 start, ... <= stop.
std::vector<int> doubling_schedule(int start, int stop);

/// Compares the lowest `levels` eigenvalues of the dipole and Coulomb Rabi
/// matrices along the cutoff schedule.
GaugeReport gauge_equivalence(const ModelParams& params, const std::vector<int>& schedule,
                              int levels);

// --------------------------------------------------------- scaling relation

struct ScalingRow {
  double f = 0.0;
  int level_index = 0;  ///< position in the N1 spectrum
  int fock = 0;         ///< dominant basis label of the N1 level
  double m_proj = 0.0;
  double energy_n1 = 0.0;
  double scaled_energy_n2 = 0.0;  ///< E(N2; r*fock, r*M) / r with r = N2 / N1
  double abs_deviation = 0.0;
  double rel_deviation = 0.0;  ///< abs / max(|energy_n1|, 1)
  bool matched = false;
  bool ambiguous = false;  ///< label shared by several eigenstates
};

struct ScalingTable {
  int n1 = 0;
  int n2 = 0;
  double delta = 1.0;
  std::vector<ScalingRow> rows;

  double max_abs_deviation(double f) const;
};

/// Pairs each of the lowest `levels` main-series levels of N1 atoms, labelled
/// by its dominant basis state |k> chi_M, with the N2-atom level labelled
/// |rk> chi_{rM}, r = N2 / N1, and reports E(N1) against E(N2)/r. Both
/// ladders coincide exactly at f = 0.
ScalingTable scaling_check(int n1, int n2, double delta, const std::vector<double>& f_grid,
                           int levels, const ConvergenceOptions& convergence, int threads = 1);

// ----------------------------------------------------- deep strong coupling

struct AsymptoteReport {
  std::vector<double> levels;  ///< lowest levels, both parities merged
  std::vector<int> parity;
  double max_distance = 0.0;  ///< max |E - round(E)|
  bool converged = false;
};

AsymptoteReport deep_strong_asymptote(const ModelParams& params, int levels,
                                      const ConvergenceOptions& convergence);

}  // namespace cavity
