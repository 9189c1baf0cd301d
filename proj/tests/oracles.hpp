#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library: Laguerre values come from the exact finite series in
// rational arithmetic, overlaps from a matrix exponential of the displacement
// generator, eigenvalues from cyclic Jacobi rotations.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <utility>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

inline cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// L_n^alpha(x) = sum_i (-1)^i C(n + alpha, n - i) x^i / i!, evaluated exactly
// for the binary value of x and rounded once at the end.
inline double laguerre_series(int n, int alpha, double x) {
  const cpp_rational xr(x);
  cpp_rational sum = 0, power = 1;
  cpp_int fact = 1;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) {
      power *= xr;
      fact *= i;
    }
    cpp_rational term = cpp_rational(binomial(n + alpha, n - i)) * power / cpp_rational(fact);
    if (i % 2) term = -term;
    sum += term;
  }
  return static_cast<double>(sum);
}

// exp(2f (a^+ - a)) on Fock states 0..dim-1.
inline Eigen::MatrixXd displacement(double f, int dim) {
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    const double s = std::sqrt(n + 1.0);
    gen(n + 1, n) = 2.0 * f * s;   // a^+
    gen(n, n + 1) = -2.0 * f * s;  // -a
  }
  return gen.exp();
}

// S_kn from the exponential: (-1)^min(k,n) <max|U|min>.
inline double overlap(const Eigen::MatrixXd& u, int k, int n) {
  const int hi = std::max(k, n), lo = std::min(k, n);
  return (lo % 2 ? -1.0 : 1.0) * u(hi, lo);
}

// Caches displacement matrices per coupling; they are the slow part.
class OverlapOracle {
 public:
  explicit OverlapOracle(int dim = 400) : dim_(dim) {}
  double operator()(int k, int n, double f) {
    auto it = cache_.find(f);
    if (it == cache_.end()) it = cache_.emplace(f, displacement(f, dim_)).first;
    return overlap(it->second, k, n);
  }

 private:
  int dim_;
  std::map<double, Eigen::MatrixXd> cache_;
};

// Cyclic Jacobi rotations; returns ascending eigenvalues.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd d = a.diagonal();
  std::sort(d.data(), d.data() + n);
  return d;
}

// Spin matrices for 2J = twice_j in ascending-M order, from the ladder
// coefficients sqrt(J(J+1) - M(M+1)).
inline Eigen::MatrixXd spin_plus(int twice_j) {
  const int d = twice_j + 1;
  const double j = 0.5 * twice_j;
  Eigen::MatrixXd jp = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) {
    const double m = -j + i;
    jp(i + 1, i) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  return jp;
}

inline Eigen::MatrixXd spin_z(int twice_j) {
  const int d = twice_j + 1;
  Eigen::MatrixXd jz = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) jz(i, i) = -0.5 * twice_j + i;
  return jz;
}

inline Eigen::MatrixXd spin_minus_i_y(int twice_j) {
  const Eigen::MatrixXd jp = spin_plus(twice_j);
  return 0.5 * (jp.transpose() - jp);
}

inline int sgn_pow(int n) { return n % 2 ? -1 : 1; }

// Coulomb-gauge Hamiltonian assembled entry by entry from oracle overlaps:
// <k, s|H|n, t> = n d_kn d_st + Delta S_kn [p Jz + q (-iJy)]_st.
inline Eigen::MatrixXd coulomb_reference(int twice_j, double delta, double f, int n_max,
                                         OverlapOracle& s) {
  const int d = twice_j + 1;
  const Eigen::MatrixXd jz = spin_z(twice_j), y = spin_minus_i_y(twice_j);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero((n_max + 1) * d, (n_max + 1) * d);
  for (int k = 0; k <= n_max; ++k) {
    for (int n = 0; n <= n_max; ++n) {
      const double p = 0.5 * (sgn_pow(n) + sgn_pow(k));
      const double q = 0.5 * (sgn_pow(n) - sgn_pow(k));
      const double skn = s(k, n, f);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          h(k * d + a, n * d + b) = delta * skn * (p * jz(a, b) + q * y(a, b));
      if (k == n)
        for (int a = 0; a < d; ++a) h(k * d + a, k * d + a) += n;
    }
  }
  return h;
}

// Dipole-gauge Rabi Hamiltonian a^+a + (Delta/2) sigma_z + f (a + a^+) sigma_x + f^2.
inline Eigen::MatrixXd dipole_reference(double delta, double f, int n_max) {
  const int dim = 2 * (n_max + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n <= n_max; ++n) {
    h(2 * n, 2 * n) = n - 0.5 * delta + f * f;
    h(2 * n + 1, 2 * n + 1) = n + 0.5 * delta + f * f;
    if (n < n_max) {
      const double g = f * std::sqrt(n + 1.0);
      h(2 * n, 2 * n + 3) = h(2 * n + 3, 2 * n) = g;
      h(2 * n + 1, 2 * n + 2) = h(2 * n + 2, 2 * n + 1) = g;
    }
  }
  return h;
}

}  // namespace oracle
