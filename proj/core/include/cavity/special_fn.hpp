#pragma once

#include <Eigen/Core>

#include <iosfwd>

namespace cavity {

/// Largest polynomial degree / Fock index accepted by the special functions.
inline constexpr int kDefaultMaxOrder = 512;

/// Region (k, n <= 160, f <= 5) where the Laguerre-based overlap has been
/// checked against a matrix-exponential reference to 1e-10 absolute.
inline constexpr int kValidatedMaxIndex = 160;
inline constexpr double kValidatedMaxCoupling = 5.0;

/// A real number stored as sign * exp(log_abs). sign == 0 encodes zero.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;

  double value() const;
};

/// Generalized Laguerre polynomial L_n^alpha(x) via the three-term
/// recurrence in the degree. Throws std::domain_error for n < 0,
/// alpha < -n or n > max_order, std::range_error if the value overflows.
double laguerre_general(int n, int alpha, double x, int max_order = kDefaultMaxOrder);

/// Same recurrence, returning sign and log-magnitude so degrees up to
/// max_order never overflow.
SignedLog laguerre_log(int n, int alpha, double x, int max_order = kDefaultMaxOrder);

/// Displaced-oscillator overlap
///   S_kn(f) = (-1)^n sqrt(n!/k!) (2f)^(k-n) L_n^(k-n)(4f^2) exp(-2f^2),  k >= n,
/// extended by S_kn = S_nk. Equals (-1)^min(k,n) <max|exp(2f(a^+ - a))|min>.
double overlap_s(int k, int n, double f);

bool within_validated_envelope(int k, int n, double f);

/// Dense symmetric table of S_kn(f) for 0 <= k, n <= size. Immutable once built.
class OverlapTable {
 public:
  OverlapTable(double f, int size, int max_size = kDefaultMaxOrder);

  double f() const { return f_; }
  int size() const { return size_; }
  double operator()(int k, int n) const { return values_(k, n); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// True when the table reaches past the oracle-validated region; callers
  /// surface this as a precision warning.
  bool outside_validated_envelope() const { return outside_envelope_; }

 private:
  double f_;
  int size_;
  bool outside_envelope_;
  Eigen::MatrixXd values_;
};

OverlapTable build_overlap_table(double f, int size, int max_size = kDefaultMaxOrder);

/// Writes "k,n,S_kn" rows (header included) for 0 <= k, n <= size.
void write_overlap_csv(std::ostream& out, const OverlapTable& table);

}  // namespace cavity
