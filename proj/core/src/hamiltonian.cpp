#include "cavity/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cavity/format.hpp"

namespace cavity {

ModelParams ModelParams::main_series(int n_atoms, double delta, double coupling) {
  ModelParams p;
  p.n_atoms = n_atoms;
  p.delta = delta;
  p.coupling = coupling;
  p.sector = SpinSector::from_twice_j(n_atoms < 0 ? 0 : n_atoms);
  return p;
}

void ModelParams::validate() const {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be > 0");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
    throw std::invalid_argument("coupling must be >= 0");
  }
  if (!sector_allowed(n_atoms, sector)) {
    throw std::invalid_argument("spin sector J = " + to_string(sector) + " does not occur for N = " +
                                std::to_string(n_atoms));
  }
}

std::string describe(const ModelParams& params) {
  std::ostringstream os;
  os << "N=" << params.n_atoms << " J=" << to_string(params.sector)
     << " delta=" << format_real(params.delta) << " f=" << format_real(params.coupling);
  return os.str();
}

const char* to_string(Gauge gauge) { return gauge == Gauge::dipole ? "dipole" : "coulomb"; }

HamiltonianMatrix::HamiltonianMatrix(ModelParams params, int n_max, Gauge gauge)
    : params_(params), n_max_(n_max), gauge_(gauge) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const int sd = params_.sector.dim();
  const int dim = (n_max + 1) * sd;
  entries_ = Eigen::MatrixXd::Zero(dim, dim);
  parity_.resize(dim);
  for (int r = 0; r < dim; ++r) parity_[r] = parity_label(r / sd, r % sd, params_.sector);
}

namespace {

double parity_sign(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

void check_table(const ModelParams& params, int n_max, const OverlapTable& table) {
  if (table.f() != params.coupling) {
    throw std::invalid_argument("overlap table coupling " + format_real(table.f()) +
                                " does not match model coupling " + format_real(params.coupling));
  }
  if (table.size() < n_max) {
    throw std::invalid_argument("overlap table size " + std::to_string(table.size()) +
                                " is smaller than n_max " + std::to_string(n_max));
  }
}

// Fills n delta_kn I + prefactor S_kn [p Z + q Y] for k >= n and mirrors the
// transpose, so the result is symmetric by construction. Only the nonzero
// spin structure is written, keeping opposite-parity entries exactly zero.
void assemble_coulomb(HamiltonianMatrix& h, const OverlapTable& table, const Eigen::MatrixXd& z,
                      const Eigen::MatrixXd& y, double prefactor) {
  Eigen::MatrixXd& m = h.mutable_entries();
  const int sd = h.spin_dim();
  for (int n = 0; n <= h.n_max(); ++n) {
    for (int k = n; k <= h.n_max(); ++k) {
      const bool same_parity = (k - n) % 2 == 0;
      const double coeff = prefactor * table(k, n) *
                           (same_parity ? parity_sign(n)
                                        : 0.5 * (parity_sign(n) - parity_sign(k)));
      const Eigen::MatrixXd& spin = same_parity ? z : y;
      for (int s = 0; s < sd; ++s) {
        for (int t = 0; t < sd; ++t) {
          if (spin(s, t) == 0.0) continue;
          const double v = coeff * spin(s, t);
          m(h.row(k, s), h.row(n, t)) = v;
          m(h.row(n, t), h.row(k, s)) = v;
        }
      }
    }
    for (int s = 0; s < sd; ++s) m(h.row(n, s), h.row(n, s)) += n;
  }
}

void require_single_atom(const ModelParams& params, const char* what) {
  params.validate();
  if (params.n_atoms != 1) {
    throw std::invalid_argument(std::string(what) + " requires n_atoms = 1");
  }
}

}  // namespace

HamiltonianMatrix build_qrm_dipole(const ModelParams& params, int n_max) {
  require_single_atom(params, "dipole-gauge Rabi builder");
  HamiltonianMatrix h(params, n_max, Gauge::dipole);
  Eigen::MatrixXd& m = h.mutable_entries();
  const double f = params.coupling;
  const double shift = f * f;
  for (int n = 0; n <= n_max; ++n) {
    m(h.row(n, 0), h.row(n, 0)) = n - 0.5 * params.delta + shift;  // spin down
    m(h.row(n, 1), h.row(n, 1)) = n + 0.5 * params.delta + shift;  // spin up
    if (n + 1 <= n_max) {
      // f sqrt(n+1) between |n> and |n+1> with sigma_x flipping the spin.
      const double c = f * std::sqrt(n + 1.0);
      for (int s = 0; s < 2; ++s) {
        m(h.row(n + 1, 1 - s), h.row(n, s)) = c;
        m(h.row(n, s), h.row(n + 1, 1 - s)) = c;
      }
    }
  }
  return h;
}

HamiltonianMatrix build_qrm_coulomb(const ModelParams& params, int n_max,
                                    const OverlapTable& table) {
  require_single_atom(params, "Coulomb-gauge Rabi builder");
  check_table(params, n_max, table);
  // Pauli matrices in the ascending-M order (down, up).
  Eigen::MatrixXd sigma_z(2, 2);
  sigma_z << -1.0, 0.0, 0.0, 1.0;
  Eigen::MatrixXd minus_i_sigma_y(2, 2);
  minus_i_sigma_y << 0.0, 1.0, -1.0, 0.0;
  HamiltonianMatrix h(params, n_max, Gauge::coulomb);
  assemble_coulomb(h, table, sigma_z, minus_i_sigma_y, 0.5 * params.delta);
  return h;
}

HamiltonianMatrix build_qrm_coulomb(const ModelParams& params, int n_max) {
  return build_qrm_coulomb(
      params, n_max,
      build_overlap_table(params.coupling, std::max(n_max, 1), std::max(n_max, kDefaultMaxOrder)));
}

HamiltonianMatrix build_dicke_coulomb(const ModelParams& params, int n_max,
                                      const OverlapTable& table) {
  params.validate();
  check_table(params, n_max, table);
  HamiltonianMatrix h(params, n_max, Gauge::coulomb);
  assemble_coulomb(h, table, jz_matrix(params.sector), minus_i_jy_matrix(params.sector),
                   params.delta);
  return h;
}

HamiltonianMatrix build_dicke_coulomb(const ModelParams& params, int n_max) {
  return build_dicke_coulomb(
      params, n_max,
      build_overlap_table(params.coupling, std::max(n_max, 1), std::max(n_max, kDefaultMaxOrder)));
}

HamiltonianMatrix build_hamiltonian(const ModelParams& params, int n_max, Gauge gauge) {
  if (gauge == Gauge::dipole) return build_qrm_dipole(params, n_max);
  if (params.n_atoms == 1) return build_qrm_coulomb(params, n_max);
  return build_dicke_coulomb(params, n_max);
}

double symmetry_residual(const HamiltonianMatrix& h) {
  return (h.entries() - h.entries().transpose()).cwiseAbs().maxCoeff();
}

double cross_parity_residual(const HamiltonianMatrix& h) {
  double worst = 0.0;
  const auto& par = h.parity();
  for (int c = 0; c < h.dim(); ++c) {
    for (int r = 0; r < h.dim(); ++r) {
      if (par[r] != par[c]) worst = std::max(worst, std::abs(h(r, c)));
    }
  }
  return worst;
}

ParitySplit split_by_parity(const HamiltonianMatrix& h) {
  ParitySplit out;
  out.even.parity = 1;
  out.odd.parity = -1;
  for (int r = 0; r < h.dim(); ++r) (h.parity()[r] > 0 ? out.even : out.odd).rows.push_back(r);
  out.cross_residual = cross_parity_residual(h);
  if (out.cross_residual != 0.0) {
    throw ConsistencyError("Hamiltonian couples opposite parity sectors (max entry " +
                           format_real(out.cross_residual) + ")");
  }
  for (ParityBlock* block : {&out.even, &out.odd}) {
    const auto n = static_cast<Eigen::Index>(block->rows.size());
    block->matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) block->matrix(i, j) = h(block->rows[i], block->rows[j]);
    }
  }
  return out;
}

void write_matrix_csv(std::ostream& out, const HamiltonianMatrix& h) {
  out << "row,col,value\n";
  for (int r = 0; r < h.dim(); ++r) {
    for (int c = 0; c < h.dim(); ++c) {
      if (h(r, c) != 0.0) out << r << ',' << c << ',' << format_real(h(r, c)) << '\n';
    }
  }
}

}  // namespace cavity
