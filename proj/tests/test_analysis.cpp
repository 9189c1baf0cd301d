#include <gtest/gtest.h>

#include "cavity/analysis.hpp"

using namespace cavity;

TEST(Grid, LinearGrid) {
  const std::vector<double> g = linear_grid(0.0, 1.5, 4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.5);
  EXPECT_DOUBLE_EQ(g[1], 0.5);
  EXPECT_EQ(linear_grid(0.3, 0.3, 1), std::vector<double>{0.3});
  EXPECT_THROW(linear_grid(1.0, 0.0, 3), std::invalid_argument);
  EXPECT_THROW(linear_grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST(Sweep, RowOrderAndContents) {
  SweepOptions opts;
  opts.f_grid = {0.0, 0.4};
  opts.methods = {ApproxMethod::diag0, ApproxMethod::pair0};
  opts.levels = 3;
  const SweepResult r = sweep(ModelParams::main_series(1, 1.0, 0.0), opts);
  const std::vector<LevelRow> rows = r.rows();
  ASSERT_EQ(rows.size(), 2u * 3u * 2u * 3u);  // points x methods(+numeric) x parities x levels
  EXPECT_EQ(rows[0].method, "numeric");
  EXPECT_EQ(rows[0].parity, 1);
  EXPECT_EQ(rows[3].parity, -1);
  EXPECT_EQ(rows[6].method, "diag0");
  EXPECT_EQ(rows[12].method, "pair0");
  EXPECT_EQ(rows[18].f, 0.4);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].level_index, static_cast<int>(i % 3));
  EXPECT_TRUE(r.all_converged());

  // f = 0: every method is exact
  for (const LevelError& e : r.points[0].errors) EXPECT_EQ(e.error, 0.0);
  EXPECT_GT(r.max_error(ApproxMethod::diag0), r.max_error(ApproxMethod::pair0));
  EXPECT_EQ(r.max_error(ApproxMethod::second_order), 0.0);  // not requested
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  SweepOptions opts;
  opts.f_grid = linear_grid(0.0, 1.2, 7);
  opts.methods = {ApproxMethod::multi0, ApproxMethod::pairwise_quad, ApproxMethod::second_order};
  opts.levels = 4;
  ModelParams p = ModelParams::main_series(2, 1.0, 0.0);
  const SweepResult serial = sweep(p, opts);
  opts.threads = 4;
  const SweepResult parallel = sweep(p, opts);
  const std::vector<LevelRow> a = serial.rows(), b = parallel.rows();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].f, b[i].f);
    EXPECT_EQ(a[i].method, b[i].method);
    EXPECT_EQ(a[i].energy, b[i].energy);
  }
}

TEST(Sweep, RejectsBadGrid) {
  SweepOptions opts;
  opts.f_grid = {0.5, 0.2};
  EXPECT_THROW(sweep(ModelParams::main_series(1, 1.0, 0.0), opts), std::invalid_argument);
  opts.f_grid = {};
  EXPECT_THROW(sweep(ModelParams::main_series(1, 1.0, 0.0), opts), std::invalid_argument);
  opts.f_grid = {-0.1};
  EXPECT_THROW(sweep(ModelParams::main_series(1, 1.0, 0.0), opts), std::invalid_argument);
}

TEST(Sweep, RabiApproximationsOrdered) {
  // At moderate coupling the pair combinations beat bare diagonals and the
  // second-order ground state beats both.
  SweepOptions opts;
  opts.f_grid = {0.3};
  opts.methods = {ApproxMethod::diag0, ApproxMethod::pair0, ApproxMethod::second_order};
  opts.levels = 6;
  const SweepResult r = sweep(ModelParams::main_series(1, 1.0, 0.0), opts);
  EXPECT_LT(r.max_error(ApproxMethod::pair0), r.max_error(ApproxMethod::diag0));
  double ground0 = 0, ground2 = 0;
  for (const LevelError& e : r.points[0].errors) {
    if (e.parity == -1 && e.level_index == 0) {
      if (e.method == ApproxMethod::pair0) ground0 = e.error;
      if (e.method == ApproxMethod::second_order) ground2 = e.error;
    }
  }
  EXPECT_LT(ground2, ground0);
}

TEST(Gauge, Schedule) {
  EXPECT_EQ(doubling_schedule(8, 64), (std::vector<int>{8, 16, 32, 64}));
  EXPECT_EQ(doubling_schedule(8, 100), (std::vector<int>{8, 16, 32, 64}));
  EXPECT_THROW(doubling_schedule(0, 4), std::invalid_argument);
}

TEST(Gauge, ZeroCouplingIsExact) {
  const GaugeReport r = gauge_equivalence(ModelParams::main_series(1, 1.0, 0.0), {8, 16}, 8);
  EXPECT_EQ(r.final_deviation, 0.0);
  EXPECT_TRUE(r.monotone);
}

TEST(Gauge, AgreeAtConvergence) {
  for (double f : {0.5, 2.0}) {
    const GaugeReport r =
        gauge_equivalence(ModelParams::main_series(1, 1.0, f), doubling_schedule(8, 256), 8);
    EXPECT_LE(r.final_deviation, 1e-6) << "f=" << f;
    EXPECT_TRUE(r.monotone) << "f=" << f;
    EXPECT_EQ(r.dipole.size(), 8u);
    EXPECT_EQ(r.dipole_parity, r.coulomb_parity);
    EXPECT_GT(r.deviation.front(), r.deviation.back());
  }
  EXPECT_THROW(gauge_equivalence(ModelParams::main_series(2, 1.0, 0.5), {8}, 4),
               std::invalid_argument);
}

TEST(Scaling, ExactAtZeroCoupling) {
  const ScalingTable t = scaling_check(10, 20, 1.0, {0.0}, 12, ConvergenceOptions{});
  ASSERT_EQ(t.rows.size(), 12u);
  for (const ScalingRow& r : t.rows) {
    EXPECT_TRUE(r.matched);
    EXPECT_EQ(r.abs_deviation, 0.0);
    EXPECT_EQ(r.energy_n1, r.fock + r.m_proj);
  }
  EXPECT_EQ(t.max_abs_deviation(0.0), 0.0);
}

TEST(Scaling, IdentityWhenAtomNumbersMatch) {
  const ScalingTable t = scaling_check(2, 2, 1.0, {0.0, 0.5, 1.0}, 6, ConvergenceOptions{});
  for (const ScalingRow& r : t.rows) {
    ASSERT_TRUE(r.matched);
    if (!r.ambiguous) {
      EXPECT_EQ(r.abs_deviation, 0.0) << "f=" << r.f << " level " << r.level_index;
    }
  }
}

TEST(Scaling, ThreadedMatchesSerial) {
  const std::vector<double> grid = linear_grid(0.0, 1.0, 5);
  const ScalingTable a = scaling_check(2, 4, 1.0, grid, 6, ConvergenceOptions{}, 1);
  const ScalingTable b = scaling_check(2, 4, 1.0, grid, 6, ConvergenceOptions{}, 3);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].energy_n1, b.rows[i].energy_n1);
    EXPECT_EQ(a.rows[i].scaled_energy_n2, b.rows[i].scaled_energy_n2);
  }
  EXPECT_THROW(scaling_check(2, 3, 1.0, grid, 6, ConvergenceOptions{}), std::invalid_argument);
}

TEST(DeepStrong, NegativeControlAndAsymptote) {
  const AsymptoteReport zero = deep_strong_asymptote(ModelParams::main_series(1, 1.0, 0.0), 6, {});
  EXPECT_EQ(zero.max_distance, 0.5);
  EXPECT_TRUE(zero.converged);

  const AsymptoteReport deep = deep_strong_asymptote(ModelParams::main_series(1, 1.0, 3.0), 6, {});
  EXPECT_TRUE(deep.converged);
  EXPECT_LE(deep.max_distance, 0.05);
  ASSERT_EQ(deep.levels.size(), 6u);
  // near-degenerate parity doublets
  EXPECT_NE(deep.parity[0], deep.parity[1]);
  EXPECT_NEAR(deep.levels[0], deep.levels[1], 1e-6);
}
