#include "cavity/eigensolve.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cavity {

EigenDecomposition eig_symmetric(const Eigen::MatrixXd& m, bool want_vectors) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_symmetric: matrix is not square");
  EigenDecomposition out;
  if (m.rows() == 0) return out;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-13 * scale) throw std::invalid_argument("eig_symmetric: matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenSolveError("eig_symmetric: QR iteration did not converge");
  }
  out.values = solver.eigenvalues();
  if (want_vectors) out.vectors = solver.eigenvectors();
  return out;
}

std::vector<double> Spectrum::sector(int parity_label) const {
  std::vector<double> out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (parity[i] == parity_label) out.push_back(eigenvalues[i]);
  }
  return out;
}

Spectrum solve_spectrum(const HamiltonianMatrix& h, bool want_vectors) {
  const ParitySplit split = split_by_parity(h);

  struct Level {
    double value;
    int parity;
    const ParityBlock* block;
    Eigen::Index column;
  };
  std::vector<Level> levels;
  std::vector<EigenDecomposition> parts;
  parts.reserve(2);
  for (const ParityBlock* block : {&split.even, &split.odd}) {
    parts.push_back(eig_symmetric(block->matrix, want_vectors));
    const EigenDecomposition& e = parts.back();
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      levels.push_back({e.values[i], block->parity, block, i});
    }
  }
  // Ties are broken by parity so the merged order is deterministic.
  std::stable_sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.parity > b.parity;
  });

  Spectrum out;
  out.n_max_used = h.n_max();
  out.converged = true;
  out.eigenvalues.reserve(levels.size());
  out.parity.reserve(levels.size());
  if (want_vectors) out.eigenvectors = Eigen::MatrixXd::Zero(h.dim(), h.dim());
  for (std::size_t c = 0; c < levels.size(); ++c) {
    const Level& lv = levels[c];
    out.eigenvalues.push_back(lv.value);
    out.parity.push_back(lv.parity);
    if (want_vectors) {
      const EigenDecomposition& e = parts[lv.block == &split.even ? 0 : 1];
      for (std::size_t i = 0; i < lv.block->rows.size(); ++i) {
        (*out.eigenvectors)(lv.block->rows[i], static_cast<Eigen::Index>(c)) =
            e.vectors(static_cast<Eigen::Index>(i), lv.column);
      }
    }
  }
  return out;
}

HamiltonianBuilder make_builder(const ModelParams& params, Gauge gauge) {
  params.validate();
  return [params, gauge](int n_max) { return build_hamiltonian(params, n_max, gauge); };
}

namespace {

double watched_shift(const Spectrum& coarse, const Spectrum& fine, int watch) {
  double worst = 0.0;
  for (int label : {1, -1}) {
    const std::vector<double> a = coarse.sector(label);
    const std::vector<double> b = fine.sector(label);
    const std::size_t count = std::min<std::size_t>({a.size(), b.size(), std::size_t(watch)});
    for (std::size_t i = 0; i < count; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace

Spectrum converged_spectrum(const HamiltonianBuilder& builder, const ConvergenceOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("converged_spectrum: tol must be > 0");
  if (options.watch < 1) throw std::invalid_argument("converged_spectrum: watch must be >= 1");
  if (options.n_max_start < 1 || options.n_max_cap < options.n_max_start) {
    throw std::invalid_argument("converged_spectrum: need 1 <= n_max_start <= n_max_cap");
  }

  // Vectors are only needed for the spectrum that is returned.
  const auto finish = [&](Spectrum s, int n_max, bool converged) {
    if (options.want_vectors) {
      Spectrum full = solve_spectrum(builder(n_max), true);
      full.max_shift = s.max_shift;
      s = std::move(full);
    }
    s.converged = converged;
    s.watched = options.watch;
    return s;
  };

  int n_max = options.n_max_start;
  Spectrum current = solve_spectrum(builder(n_max));
  while (n_max < options.n_max_cap) {
    const int next_n = std::min(2 * n_max, options.n_max_cap);
    Spectrum next = solve_spectrum(builder(next_n));
    const double shift = watched_shift(current, next, options.watch);
    if (shift <= options.tol) {
      current.max_shift = shift;
      return finish(std::move(current), n_max, true);
    }
    current = std::move(next);
    current.max_shift = shift;
    n_max = next_n;
  }
  return finish(std::move(current), n_max, false);
}

}  // namespace cavity
