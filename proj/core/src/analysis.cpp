#include "cavity/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace cavity {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any task is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void require_increasing(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("coupling grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw std::invalid_argument("coupling grid values must be >= 0");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("coupling grid must be strictly increasing");
    }
  }
}

std::vector<double> lowest(std::vector<double> values, std::size_t count) {
  if (values.size() > count) values.resize(count);
  return values;
}

}  // namespace

std::vector<double> linear_grid(double f_min, double f_max, int points) {
  if (points < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(f_min <= f_max)) throw std::invalid_argument("grid requires f_min <= f_max");
  if (points == 1) return {f_min};
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = f_min + (f_max - f_min) * static_cast<double>(i) / (points - 1);
  }
  grid.back() = f_max;
  return grid;
}

std::vector<LevelRow> SweepResult::rows() const {
  std::vector<LevelRow> out;
  for (const SweepPoint& pt : points) {
    for (int label : {1, -1}) {
      const std::vector<double> num = lowest(pt.numeric.sector(label), levels);
      for (std::size_t i = 0; i < num.size(); ++i) {
        out.push_back({pt.f, params.sector, label, static_cast<int>(i), "numeric", num[i]});
      }
    }
    for (const ApproxResult& ar : pt.approx) {
      for (int label : {1, -1}) {
        const std::vector<double> approx = lowest(ar.sector(label), levels);
        for (std::size_t i = 0; i < approx.size(); ++i) {
          out.push_back({pt.f, params.sector, label, static_cast<int>(i), to_string(ar.method),
                         approx[i]});
        }
      }
    }
  }
  return out;
}

double SweepResult::max_error(ApproxMethod method) const {
  double worst = 0.0;
  for (const SweepPoint& pt : points) {
    for (const LevelError& e : pt.errors) {
      if (e.method == method) worst = std::max(worst, e.error);
    }
  }
  return worst;
}

bool SweepResult::all_converged() const {
  return std::all_of(points.begin(), points.end(),
                     [](const SweepPoint& p) { return p.numeric.converged; });
}

SweepResult sweep(const ModelParams& params, const SweepOptions& options) {
  params.validate();
  require_increasing(options.f_grid);
  if (options.levels < 1) throw std::invalid_argument("sweep: levels must be >= 1");

  SweepResult result;
  result.params = params;
  result.methods = options.methods;
  result.levels = options.levels;
  result.points.resize(options.f_grid.size());

  // Enough multiplets that each parity sector holds `levels` approximate levels.
  const int n_top = 2 * options.levels + params.sector.twice_j() + 4;

  parallel_for(options.f_grid.size(), options.threads, [&](std::size_t i) {
    ModelParams p = params;
    p.coupling = options.f_grid[i];
    SweepPoint& pt = result.points[i];
    pt.f = p.coupling;
    ConvergenceOptions conv = options.convergence;
    conv.watch = std::max(conv.watch, options.levels);
    pt.numeric = converged_spectrum(make_builder(p, Gauge::coulomb), conv);
    if (options.methods.empty()) return;

    const int n_max = std::max(pt.numeric.n_max_used, n_top + 1);
    const HamiltonianMatrix h = build_hamiltonian(p, n_max, Gauge::coulomb);
    for (ApproxMethod m : options.methods) {
      pt.approx.push_back(approximate_levels(h, m, n_top));
      const ApproxResult& ar = pt.approx.back();
      for (int label : {1, -1}) {
        const std::vector<double> num = pt.numeric.sector(label);
        const std::vector<double> approx = ar.sector(label);
        const std::size_t count =
            std::min<std::size_t>({num.size(), approx.size(), std::size_t(options.levels)});
        for (std::size_t k = 0; k < count; ++k) {
          pt.errors.push_back({m, label, static_cast<int>(k), std::abs(approx[k] - num[k])});
        }
      }
    }
  });
  return result;
}

std::vector<int> doubling_schedule(int start, int stop) {
  if (start < 1 || stop < start) throw std::invalid_argument("doubling_schedule: need 1 <= start <= stop");
  std::vector<int> out;
  for (int n = start; n <= stop; n *= 2) out.push_back(n);
  return out;
}

GaugeReport gauge_equivalence(const ModelParams& params, const std::vector<int>& schedule,
                              int levels) {
  params.validate();
  if (params.n_atoms != 1) throw std::invalid_argument("gauge_equivalence requires N = 1");
  if (schedule.empty()) throw std::invalid_argument("gauge_equivalence: empty cutoff schedule");
  if (levels < 1) throw std::invalid_argument("gauge_equivalence: levels must be >= 1");

  GaugeReport report;
  report.f = params.coupling;
  for (int n_max : schedule) {
    const Spectrum dip = solve_spectrum(build_qrm_dipole(params, n_max));
    const Spectrum cou = solve_spectrum(build_qrm_coulomb(params, n_max));
    const std::size_t count =
        std::min<std::size_t>({dip.eigenvalues.size(), cou.eigenvalues.size(), std::size_t(levels)});
    double dev = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      dev = std::max(dev, std::abs(dip.eigenvalues[i] - cou.eigenvalues[i]));
    }
    if (!report.deviation.empty() && dev > report.deviation.back() + kRoundoffFloor) {
      report.monotone = false;
    }
    report.n_max.push_back(n_max);
    report.deviation.push_back(dev);
    report.dipole = lowest(dip.eigenvalues, count);
    report.coulomb = lowest(cou.eigenvalues, count);
    report.dipole_parity.assign(dip.parity.begin(), dip.parity.begin() + count);
    report.coulomb_parity.assign(cou.parity.begin(), cou.parity.begin() + count);
  }
  report.final_deviation = report.deviation.back();
  return report;
}

double ScalingTable::max_abs_deviation(double f) const {
  double worst = 0.0;
  for (const ScalingRow& r : rows) {
    if (r.f == f && r.matched) worst = std::max(worst, r.abs_deviation);
  }
  return worst;
}

namespace {

struct Labelled {
  int row = 0;        ///< dominant basis row
  double weight = 0;  ///< its squared amplitude
};

Labelled dominant_label(const Eigen::MatrixXd& vectors, Eigen::Index column) {
  Eigen::Index best = 0;
  vectors.col(column).cwiseAbs().maxCoeff(&best);
  const double amp = vectors(best, column);
  return {static_cast<int>(best), amp * amp};
}

}  // namespace

ScalingTable scaling_check(int n1, int n2, double delta, const std::vector<double>& f_grid,
                           int levels, const ConvergenceOptions& convergence, int threads) {
  if (n1 < 1 || n2 < n1 || n2 % n1 != 0) {
    throw std::invalid_argument("scaling_check: N2 must be a positive multiple of N1");
  }
  if (levels < 1) throw std::invalid_argument("scaling_check: levels must be >= 1");
  require_increasing(f_grid);
  const int ratio = n2 / n1;

  ScalingTable table;
  table.n1 = n1;
  table.n2 = n2;
  table.delta = delta;
  std::vector<std::vector<ScalingRow>> per_point(f_grid.size());

  parallel_for(f_grid.size(), threads, [&](std::size_t i) {
    const ModelParams p1 = ModelParams::main_series(n1, delta, f_grid[i]);
    const ModelParams p2 = ModelParams::main_series(n2, delta, f_grid[i]);
    ConvergenceOptions conv = convergence;
    conv.want_vectors = true;
    conv.watch = std::max(conv.watch, levels);
    const Spectrum s1 = converged_spectrum(make_builder(p1), conv);
    const std::size_t count = std::min<std::size_t>(s1.eigenvalues.size(), levels);
    std::vector<Labelled> labels1(count);
    int top_fock = 0;
    for (std::size_t c = 0; c < count; ++c) {
      labels1[c] = dominant_label(*s1.eigenvectors, static_cast<Eigen::Index>(c));
      top_fock = std::max(top_fock, labels1[c].row / p1.sector.dim());
    }
    // The cutoff a displaced spectrum needs depends on f, not on N: keep the
    // N1 headroom above the highest scaled Fock label.
    const int n_max2 = ratio * top_fock + (s1.n_max_used - top_fock);
    const HamiltonianMatrix h2 = build_hamiltonian(p2, n_max2, Gauge::coulomb);
    const Spectrum s2 = solve_spectrum(h2, true);

    // Label -> (level, weight, count) for the N2 spectrum.
    struct Slot {
      std::size_t level = 0;
      double weight = -1.0;
      int count = 0;
    };
    std::map<int, Slot> by_label;
    for (std::size_t c = 0; c < s2.eigenvalues.size(); ++c) {
      const Labelled lab = dominant_label(*s2.eigenvectors, static_cast<Eigen::Index>(c));
      Slot& slot = by_label[lab.row];
      ++slot.count;
      if (lab.weight > slot.weight) {
        slot.weight = lab.weight;
        slot.level = c;
      }
    }

    std::map<int, int> n1_label_count;
    for (const Labelled& lab : labels1) ++n1_label_count[lab.row];

    const int sd1 = p1.sector.dim();
    const int sd2 = p2.sector.dim();
    for (std::size_t c = 0; c < count; ++c) {
      ScalingRow row;
      row.f = f_grid[i];
      row.level_index = static_cast<int>(c);
      row.fock = labels1[c].row / sd1;
      const int m_index = labels1[c].row % sd1;
      row.m_proj = p1.sector.m_of(m_index);
      row.energy_n1 = s1.eigenvalues[c];
      row.ambiguous = n1_label_count[labels1[c].row] > 1;
      // M' = r M  <=>  m_index' = r m_index + (J2 - r J1), and J2 = r J1.
      const int target_fock = ratio * row.fock;
      const int target_m = ratio * m_index;
      const auto it = by_label.find(target_fock * sd2 + target_m);
      if (target_fock <= n_max2 && it != by_label.end()) {
        row.matched = true;
        row.ambiguous = row.ambiguous || it->second.count > 1;
        row.scaled_energy_n2 = s2.eigenvalues[it->second.level] / ratio;
        row.abs_deviation = std::abs(row.energy_n1 - row.scaled_energy_n2);
        row.rel_deviation = row.abs_deviation / std::max(std::abs(row.energy_n1), 1.0);
      }
      per_point[i].push_back(row);
    }
  });

  for (auto& rows : per_point) {
    for (ScalingRow& r : rows) table.rows.push_back(r);
  }
  return table;
}

AsymptoteReport deep_strong_asymptote(const ModelParams& params, int levels,
                                      const ConvergenceOptions& convergence) {
  if (levels < 1) throw std::invalid_argument("deep_strong_asymptote: levels must be >= 1");
  ConvergenceOptions conv = convergence;
  conv.watch = std::max(conv.watch, levels);
  const Spectrum s = converged_spectrum(make_builder(params), conv);
  AsymptoteReport out;
  out.converged = s.converged;
  out.levels = lowest(s.eigenvalues, levels);
  out.parity.assign(s.parity.begin(), s.parity.begin() + out.levels.size());
  for (double e : out.levels) out.max_distance = std::max(out.max_distance, std::abs(e - std::round(e)));
  return out;
}

}  // namespace cavity
