#include "cavity/approx_om.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cavity/eigensolve.hpp"

namespace cavity {

const char* to_string(ApproxMethod method) {
  switch (method) {
    case ApproxMethod::diag0: return "diag0";
    case ApproxMethod::pair0: return "pair0";
    case ApproxMethod::multi0: return "multi0";
    case ApproxMethod::pairwise_quad: return "pairwise_quad";
    case ApproxMethod::second_order: return "second_order";
  }
  return "unknown";
}

ApproxMethod parse_approx_method(const std::string& name) {
  for (ApproxMethod m : {ApproxMethod::diag0, ApproxMethod::pair0, ApproxMethod::multi0,
                         ApproxMethod::pairwise_quad, ApproxMethod::second_order}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown approximation method '" + name + "'");
}

std::vector<double> ApproxResult::sector(int parity_label) const {
  std::vector<double> out;
  for (const ApproxLevel& lv : levels) {
    if (lv.parity == parity_label) out.push_back(lv.energy);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

constexpr int kUp = 1;
constexpr int kDown = 0;

void require_rabi(const HamiltonianMatrix& h, const char* what) {
  if (h.params().n_atoms != 1 || h.params().sector.twice_j() != 1) {
    throw std::invalid_argument(std::string(what) + " requires the Rabi model (N = 1, J = 1/2)");
  }
  if (h.gauge() != Gauge::coulomb) {
    throw std::invalid_argument(std::string(what) + " requires the Coulomb-gauge matrix");
  }
}

void require_fock(const HamiltonianMatrix& h, int fock, const char* what) {
  if (fock < 0 || fock > h.n_max()) {
    throw std::out_of_range(std::string(what) + ": Fock index " + std::to_string(fock) +
                            " outside cutoff " + std::to_string(h.n_max()));
  }
}

void require_twice_j(const HamiltonianMatrix& h, int n_atoms, int twice_j, const char* what) {
  if (h.params().n_atoms != n_atoms || h.params().sector.twice_j() != twice_j) {
    throw std::invalid_argument(std::string(what) + " requires N = " + std::to_string(n_atoms) +
                                ", 2J = " + std::to_string(twice_j));
  }
}

HamiltonianMatrix coulomb_matrix(const ModelParams& params, int n_max) {
  return build_hamiltonian(params, std::max(n_max, 1), Gauge::coulomb);
}

// Flips column signs so the first nonzero component (j = 0 first) is positive.
void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      if (vectors(r, c) != 0.0) {
        if (vectors(r, c) < 0.0) vectors.col(c) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

double qrm_zeroth_diag(const HamiltonianMatrix& h, int n, int s) {
  require_rabi(h, "qrm_zeroth_diag");
  require_fock(h, n, "qrm_zeroth_diag");
  if (s != 1 && s != -1) throw std::invalid_argument("qrm_zeroth_diag: s must be +1 or -1");
  const int m = s > 0 ? kUp : kDown;
  return h.element(n, m, n, m);
}

double qrm_zeroth_diag(const ModelParams& params, int n, int s) {
  return qrm_zeroth_diag(coulomb_matrix(params, n), n, s);
}

QrmPair qrm_pair(const HamiltonianMatrix& h, int n) {
  require_rabi(h, "qrm_pair");
  require_fock(h, n + 1, "qrm_pair");
  Eigen::Matrix2d block;
  const double a = h.element(n, kUp, n, kUp);
  const double b = h.element(n + 1, kDown, n + 1, kDown);
  const double c = h.element(n, kUp, n + 1, kDown);
  block << a, c, c, b;
  EigenDecomposition e = eig_symmetric(block);
  // Order rows as (B, A) so the sign fix makes B >= 0.
  Eigen::MatrixXd swapped(2, 2);
  swapped.row(0) = e.vectors.row(1);
  swapped.row(1) = e.vectors.row(0);
  fix_signs(swapped);

  QrmPair out;
  out.lower = {e.values[0], swapped(1, 0), swapped(0, 0)};
  out.upper = {e.values[1], swapped(1, 1), swapped(0, 1)};
  out.gap = e.values[1] - e.values[0];
  return out;
}

QrmPair qrm_pair(const ModelParams& params, int n) { return qrm_pair(coulomb_matrix(params, n + 1), n); }

QrmPair qrm_pair_closed_form(const ModelParams& params, int n) {
  params.validate();
  if (params.n_atoms != 1) throw std::invalid_argument("qrm_pair_closed_form requires N = 1");
  if (n < 0) throw std::invalid_argument("qrm_pair_closed_form: n must be >= 0");
  const double delta = params.delta;
  const double f = params.coupling;
  const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
  const double s_nn = overlap_s(n, n, f);
  const double s_mm = overlap_s(n + 1, n + 1, f);
  const double s_nm = overlap_s(n, n + 1, f);

  const double centre = n + 0.5 + 0.25 * delta * sign_n * (s_nn + s_mm);
  const double split = 1.0 - 0.5 * delta * sign_n * (s_nn - s_mm);
  const double gap = std::sqrt(split * split + delta * delta * s_nm * s_nm);

  const double coupling = 0.5 * delta * sign_n * s_nm;
  const double upper_diag = n + 0.5 * delta * sign_n * s_nn;
  auto state = [&](double energy) {
    const double denom = upper_diag - energy;
    PairState ps{energy, 0.0, 1.0};
    if (denom == 0.0) {
      // gamma is infinite: the state is |n> chi_up alone.
      ps.a = 1.0;
      ps.b = 0.0;
      return ps;
    }
    const double gamma = coupling / denom;
    const double norm = std::sqrt(1.0 + gamma * gamma);
    ps.a = -gamma / norm;
    ps.b = 1.0 / norm;
    return ps;
  };
  QrmPair out;
  out.lower = state(centre - 0.5 * gap);
  out.upper = state(centre + 0.5 * gap);
  out.gap = gap;
  return out;
}

SecondOrderResult second_order_ground(const HamiltonianMatrix& h, int k_max) {
  if (h.gauge() != Gauge::coulomb) {
    throw std::invalid_argument("second_order_ground requires the Coulomb-gauge matrix");
  }
  require_fock(h, k_max, "second_order_ground");
  const int g = h.row(0, 0);
  SecondOrderResult out;
  out.zeroth = h(g, g);
  const int last = h.row(k_max, h.spin_dim() - 1);
  double shell = 0.0;
  for (int mu = 0; mu <= last; ++mu) {
    if (mu == g) continue;
    const double num = h(mu, g) * h(mu, g);
    if (num == 0.0) continue;
    const double denom = h(mu, mu) - out.zeroth;
    if (std::abs(denom) < kSingularDenominator) {
      out.singular_terms.push_back({h.fock_of(mu), h.m_index_of(mu), num, denom});
      continue;
    }
    const double term = -num / denom;
    out.correction += term;
    if (h.fock_of(mu) == k_max) shell += term;
  }
  out.tail_estimate = std::abs(shell);
  out.energy = out.zeroth + out.correction;
  return out;
}

SecondOrderResult qrm_second_order_ground(const HamiltonianMatrix& h, int k_max) {
  require_rabi(h, "qrm_second_order_ground");
  return second_order_ground(h, k_max);
}

SecondOrderResult qrm_second_order_ground(const ModelParams& params, int k_max) {
  return qrm_second_order_ground(coulomb_matrix(params, k_max), k_max);
}

SecondOrderResult qrm_second_order_excited(const HamiltonianMatrix& h, int n, int r, int k_max) {
  require_rabi(h, "qrm_second_order_excited");
  if (r != 1 && r != -1) throw std::invalid_argument("qrm_second_order_excited: r must be +1 or -1");
  require_fock(h, k_max, "qrm_second_order_excited");
  if (k_max < n + 1) throw std::invalid_argument("qrm_second_order_excited: k_max must be >= n + 1");

  const QrmPair pair = qrm_pair(h, n);
  const PairState& self = pair.branch(r);
  const PairState& other = pair.branch(-r);
  const int nu1 = h.row(n, kUp);
  const int nu2 = h.row(n + 1, kDown);

  SecondOrderResult out;
  out.zeroth = self.energy;

  // F_nr vanishes for exact 2x2 eigenvectors; only rounding is left, which is
  // dropped rather than divided by a possibly degenerate gap.
  const double f_nr = other.a * self.a * h(nu1, nu1) + other.a * self.b * h(nu1, nu2) +
                      other.b * self.a * h(nu2, nu1) + other.b * self.b * h(nu2, nu2);
  if (std::abs(f_nr) > 1e-12 * std::max(1.0, std::abs(self.energy))) {
    const double denom = self.energy - other.energy;
    if (std::abs(denom) < kSingularDenominator) {
      out.singular_terms.push_back({n, kUp, f_nr * f_nr, denom});
    } else {
      out.correction += f_nr * f_nr / denom;
    }
  }

  const int last = h.row(k_max, h.spin_dim() - 1);
  double shell = 0.0;
  for (int mu = 0; mu <= last; ++mu) {
    if (mu == nu1 || mu == nu2) continue;
    const double mixed = self.a * h(mu, nu1) + self.b * h(mu, nu2);
    const double num = mixed * mixed;
    if (num == 0.0) continue;
    const double denom = self.energy - h(mu, mu);
    if (std::abs(denom) < kSingularDenominator) {
      out.singular_terms.push_back({h.fock_of(mu), h.m_index_of(mu), num, denom});
      continue;
    }
    const double term = num / denom;
    out.correction += term;
    if (h.fock_of(mu) == k_max) shell += term;
  }
  out.tail_estimate = std::abs(shell);
  out.energy = out.zeroth + out.correction;
  return out;
}

SecondOrderResult qrm_second_order_excited(const ModelParams& params, int n, int r, int k_max) {
  return qrm_second_order_excited(coulomb_matrix(params, k_max), n, r, k_max);
}

std::vector<int> multiplet_rows(const HamiltonianMatrix& h, int n) {
  require_fock(h, n, "multiplet_rows");
  const int width = std::min(n, h.params().sector.twice_j());
  std::vector<int> rows;
  rows.reserve(width + 1);
  for (int j = 0; j <= width; ++j) rows.push_back(h.row(n - j, j));
  return rows;
}

Multiplet degenerate_multiplet(const HamiltonianMatrix& h, int n) {
  if (h.gauge() != Gauge::coulomb) {
    throw std::invalid_argument("degenerate_multiplet requires the Coulomb-gauge matrix");
  }
  Multiplet out;
  out.n = n;
  out.rows = multiplet_rows(h, n);
  out.parity = h.parity()[out.rows.front()];
  const auto m = static_cast<Eigen::Index>(out.rows.size());
  Eigen::MatrixXd block(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) block(i, j) = h(out.rows[i], out.rows[j]);
  }
  EigenDecomposition e = eig_symmetric(block);
  fix_signs(e.vectors);
  out.energies = std::move(e.values);
  out.coefficients = std::move(e.vectors);
  return out;
}

double dicke2_zeroth(const HamiltonianMatrix& h, int n, int m_proj) {
  require_twice_j(h, 2, 2, "dicke2_zeroth");
  require_fock(h, n, "dicke2_zeroth");
  if (m_proj < -1 || m_proj > 1) throw std::invalid_argument("dicke2_zeroth: M must be -1, 0, 1");
  const int m = m_proj + 1;
  return h.element(n, m, n, m);
}

double dicke2_zeroth(const ModelParams& params, int n, int m_proj) {
  return dicke2_zeroth(coulomb_matrix(params, n), n, m_proj);
}

Multiplet dicke2_multi(const HamiltonianMatrix& h, int n) {
  require_twice_j(h, 2, 2, "dicke2_multi");
  return degenerate_multiplet(h, n);
}

Multiplet dicke2_multi(const ModelParams& params, int n) { return dicke2_multi(coulomb_matrix(params, n), n); }

Multiplet dicke3_multi(const HamiltonianMatrix& h, int n) {
  require_twice_j(h, 3, 3, "dicke3_multi");
  return degenerate_multiplet(h, n);
}

Multiplet dicke3_multi(const ModelParams& params, int n) { return dicke3_multi(coulomb_matrix(params, n), n); }

std::pair<double, double> quadratic_roots(double a, double b, double c) {
  const double root = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
  return {0.5 * (a + b - root), 0.5 * (a + b + root)};
}

std::vector<double> pairwise_quadratic(const HamiltonianMatrix& h, int n) {
  const int twice_j = h.params().sector.twice_j();
  if (twice_j < 1) throw std::invalid_argument("pairwise_quadratic requires J >= 1/2");
  if (n < twice_j) {
    throw std::invalid_argument("pairwise_quadratic requires n >= 2J (full multiplet)");
  }
  const std::vector<int> rows = multiplet_rows(h, n);
  std::vector<std::pair<double, double>> roots;  // (E-, E+) per neighbour pair
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    roots.push_back(quadratic_roots(h(rows[i], rows[i]), h(rows[i + 1], rows[i + 1]),
                                    h(rows[i], rows[i + 1])));
  }
  std::vector<double> out;
  out.reserve(rows.size());
  out.push_back(roots.front().second);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    out.push_back(0.5 * (roots[i - 1].first + roots[i].second));
  }
  out.push_back(roots.back().first);
  return out;
}

std::vector<double> dicke2_pairwise_quad(const HamiltonianMatrix& h, int n) {
  require_twice_j(h, 2, 2, "dicke2_pairwise_quad");
  return pairwise_quadratic(h, n);
}

std::vector<double> dicke2_pairwise_quad(const ModelParams& params, int n) {
  return dicke2_pairwise_quad(coulomb_matrix(params, n), n);
}

std::vector<double> dicke3_pairwise_quad(const HamiltonianMatrix& h, int n) {
  require_twice_j(h, 3, 3, "dicke3_pairwise_quad");
  return pairwise_quadratic(h, n);
}

std::vector<double> dicke3_pairwise_quad(const ModelParams& params, int n) {
  return dicke3_pairwise_quad(coulomb_matrix(params, n), n);
}

namespace {

void append_multiplet(ApproxResult& out, const Multiplet& mp) {
  for (Eigen::Index p = 0; p < mp.energies.size(); ++p) {
    ApproxLevel lv;
    lv.n = mp.n;
    lv.branch = static_cast<int>(p);
    lv.parity = mp.parity;
    lv.energy = mp.energies[p];
    lv.coefficients.assign(mp.coefficients.col(p).data(),
                           mp.coefficients.col(p).data() + mp.coefficients.rows());
    out.levels.push_back(std::move(lv));
  }
}

void append_rabi_pairs(ApproxResult& out, const HamiltonianMatrix& h, int n_top, bool corrected) {
  const int ground = h.row(0, kDown);
  ApproxLevel g;
  g.parity = h.parity()[ground];
  g.branch = -1;
  g.energy = corrected ? qrm_second_order_ground(h, h.n_max()).energy : h(ground, ground);
  g.coefficients = {1.0};
  out.levels.push_back(g);
  for (int n = 0; n < n_top; ++n) {
    const QrmPair pair = qrm_pair(h, n);
    for (int r : {-1, 1}) {
      ApproxLevel lv;
      lv.n = n;
      lv.branch = r;
      lv.parity = h.parity()[h.row(n, kUp)];
      lv.energy = corrected ? qrm_second_order_excited(h, n, r, h.n_max()).energy
                            : pair.branch(r).energy;
      lv.coefficients = {pair.branch(r).a, pair.branch(r).b};
      out.levels.push_back(std::move(lv));
    }
  }
}

}  // namespace

ApproxResult approximate_levels(const HamiltonianMatrix& h, ApproxMethod method, int n_top) {
  if (h.gauge() != Gauge::coulomb) {
    throw std::invalid_argument("approximate_levels requires the Coulomb-gauge matrix");
  }
  require_fock(h, n_top, "approximate_levels");
  const bool rabi = h.params().sector.twice_j() == 1;
  ApproxResult out;
  out.method = method;
  switch (method) {
    case ApproxMethod::diag0: {
      for (int r = 0; r < h.dim(); ++r) {
        if (h.fock_of(r) > n_top) break;
        ApproxLevel lv;
        lv.n = h.fock_of(r);
        lv.branch = h.m_index_of(r);
        lv.parity = h.parity()[r];
        lv.energy = h(r, r);
        out.levels.push_back(std::move(lv));
      }
      break;
    }
    case ApproxMethod::pair0:
      if (!rabi) throw std::invalid_argument("pair0 is defined for the J = 1/2 series only");
      append_rabi_pairs(out, h, n_top, false);
      break;
    case ApproxMethod::multi0:
      for (int n = 0; n <= n_top; ++n) append_multiplet(out, degenerate_multiplet(h, n));
      break;
    case ApproxMethod::pairwise_quad: {
      const int twice_j = h.params().sector.twice_j();
      for (int n = 0; n <= n_top; ++n) {
        if (twice_j == 0 || n < twice_j) {
          append_multiplet(out, degenerate_multiplet(h, n));
          continue;
        }
        const std::vector<double> energies = pairwise_quadratic(h, n);
        const int parity = h.parity()[h.row(n, 0)];
        for (std::size_t p = 0; p < energies.size(); ++p) {
          ApproxLevel lv;
          lv.n = n;
          lv.branch = static_cast<int>(p);
          lv.parity = parity;
          lv.energy = energies[p];
          out.levels.push_back(std::move(lv));
        }
      }
      break;
    }
    case ApproxMethod::second_order:
      if (rabi) {
        append_rabi_pairs(out, h, n_top, true);
      } else {
        for (int n = 0; n <= n_top; ++n) append_multiplet(out, degenerate_multiplet(h, n));
        out.levels.front().energy = second_order_ground(h, h.n_max()).energy;
      }
      break;
  }
  return out;
}

}  // namespace cavity
