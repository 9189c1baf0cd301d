#include "cavity/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cavity/format.hpp"

namespace cavity {

namespace {

constexpr int kRescaleBits = 512;
const double kUpper = std::ldexp(1.0, kRescaleBits);
const double kLower = std::ldexp(1.0, -kRescaleBits);

SignedLog to_signed_log(double scaled, long exponent) {
  if (scaled == 0.0) return {0, -std::numeric_limits<double>::infinity()};
  return {scaled > 0.0 ? 1 : -1, std::log(std::abs(scaled)) + exponent * std::log(2.0)};
}

// Runs the degree recurrence at fixed alpha, handing L_m^alpha(x) to sink for
// m = 0..n_last. Both carried values share one binary exponent, so the
// recurrence itself is untouched by the rescaling.
template <class Sink>
void laguerre_degrees(int n_last, int alpha, double x, Sink&& sink) {
  double prev = 1.0;
  long exponent = 0;
  sink(0, to_signed_log(prev, exponent));
  if (n_last == 0) return;
  double cur = 1.0 + alpha - x;
  sink(1, to_signed_log(cur, exponent));
  for (int m = 1; m < n_last; ++m) {
    const double next = ((2.0 * m + 1.0 + alpha - x) * cur - (m + alpha) * prev) / (m + 1.0);
    prev = cur;
    cur = next;
    const double big = std::max(std::abs(cur), std::abs(prev));
    if (big > kUpper) {
      prev = std::ldexp(prev, -kRescaleBits);
      cur = std::ldexp(cur, -kRescaleBits);
      exponent += kRescaleBits;
    } else if (big != 0.0 && big < kLower) {
      prev = std::ldexp(prev, kRescaleBits);
      cur = std::ldexp(cur, kRescaleBits);
      exponent -= kRescaleBits;
    }
    sink(m + 1, to_signed_log(cur, exponent));
  }
}

void check_laguerre_args(int n, int alpha, int max_order) {
  if (n < 0) throw std::domain_error("laguerre: negative degree " + std::to_string(n));
  if (alpha < -n) {
    throw std::domain_error("laguerre: alpha " + std::to_string(alpha) + " < -n for n = " +
                            std::to_string(n));
  }
  if (n > max_order) {
    throw std::domain_error("laguerre: degree " + std::to_string(n) + " exceeds limit " +
                            std::to_string(max_order));
  }
}

SignedLog laguerre_log_unchecked(int n, int alpha, double x) {
  if (alpha < 0) {
    // The recurrence cancels badly for alpha < 0; reflect instead:
    // L_n^(-m)(x) = (-x)^m (n-m)!/n! L_(n-m)^m(x).
    const int m = -alpha;
    if (x == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    SignedLog out = laguerre_log_unchecked(n - m, m, x);
    if (out.sign == 0) return out;
    double log_ratio = 0.0;  // ln(n!/(n-m)!)
    for (int j = n - m + 1; j <= n; ++j) log_ratio += std::log(static_cast<double>(j));
    out.log_abs += m * std::log(std::abs(x)) - log_ratio;
    if (x > 0.0 && m % 2 == 1) out.sign = -out.sign;
    return out;
  }
  SignedLog out;
  laguerre_degrees(n, alpha, x, [&](int m, SignedLog v) {
    if (m == n) out = v;
  });
  return out;
}

double sign_of_power(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog laguerre_log(int n, int alpha, double x, int max_order) {
  check_laguerre_args(n, alpha, max_order);
  return laguerre_log_unchecked(n, alpha, x);
}

double laguerre_general(int n, int alpha, double x, int max_order) {
  check_laguerre_args(n, alpha, max_order);
  const SignedLog v = laguerre_log_unchecked(n, alpha, x);
  const double out = v.value();
  if (!std::isfinite(out)) {
    throw std::range_error("laguerre: L_" + std::to_string(n) + "^" + std::to_string(alpha) +
                           " overflows double precision");
  }
  return out;
}

double overlap_s(int k, int n, double f) {
  if (k < 0 || n < 0) throw std::domain_error("overlap_s: negative Fock index");
  if (!(f >= 0.0)) throw std::domain_error("overlap_s: coupling must be >= 0");
  if (k < n) std::swap(k, n);
  const int d = k - n;
  if (f == 0.0) return d == 0 ? sign_of_power(n) : 0.0;

  const SignedLog lag = laguerre_log_unchecked(n, d, 4.0 * f * f);
  if (lag.sign == 0) return 0.0;
  double log_ratio = 0.0;  // ln(k!/n!)
  for (int j = n + 1; j <= k; ++j) log_ratio += std::log(static_cast<double>(j));
  const double log_abs = -0.5 * log_ratio + d * std::log(2.0 * f) + lag.log_abs - 2.0 * f * f;
  return sign_of_power(n) * lag.sign * std::exp(log_abs);
}

bool within_validated_envelope(int k, int n, double f) {
  return k <= kValidatedMaxIndex && n <= kValidatedMaxIndex && f <= kValidatedMaxCoupling;
}

OverlapTable::OverlapTable(double f, int size, int max_size)
    : f_(f), size_(size), outside_envelope_(!within_validated_envelope(size, size, f)) {
  if (!(f >= 0.0)) throw std::domain_error("overlap table: coupling must be >= 0");
  if (size < 1) throw std::invalid_argument("overlap table: size must be >= 1");
  if (size > max_size) {
    throw std::length_error("overlap table: size " + std::to_string(size) + " exceeds limit " +
                            std::to_string(max_size));
  }
  const int dim = size + 1;
  values_ = Eigen::MatrixXd::Zero(dim, dim);
  if (f == 0.0) {
    for (int n = 0; n < dim; ++n) values_(n, n) = sign_of_power(n);
    return;
  }

  std::vector<double> log_fact(dim, 0.0);
  for (int j = 1; j < dim; ++j) log_fact[j] = log_fact[j - 1] + std::log(static_cast<double>(j));
  const double x = 4.0 * f * f;
  const double log_two_f = std::log(2.0 * f);
  const double damping = -2.0 * f * f;

  for (int d = 0; d < dim; ++d) {
    laguerre_degrees(dim - 1 - d, d, x, [&](int n, SignedLog lag) {
      const int k = n + d;
      double s = 0.0;
      if (lag.sign != 0) {
        const double log_abs =
            0.5 * (log_fact[n] - log_fact[k]) + d * log_two_f + lag.log_abs + damping;
        s = sign_of_power(n) * lag.sign * std::exp(log_abs);
      }
      values_(k, n) = s;
      values_(n, k) = s;
    });
  }
}

OverlapTable build_overlap_table(double f, int size, int max_size) {
  return OverlapTable(f, size, max_size);
}

void write_overlap_csv(std::ostream& out, const OverlapTable& table) {
  out << "k,n,S_kn\n";
  for (int k = 0; k <= table.size(); ++k) {
    for (int n = 0; n <= table.size(); ++n) {
      out << k << ',' << n << ',' << format_real(table(k, n)) << '\n';
    }
  }
}

}  // namespace cavity
