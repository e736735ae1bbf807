#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rodflow/eulerian.hpp"
#include "rodflow/nonuniform.hpp"
#include "rodflow/spectral.hpp"
#include "test_helpers.hpp"

using namespace rodflow;
using rodflow::testing::sup_diff;

namespace {

constexpr double two_pi = 2.0 * M_PI;

ExperimentConfig mini_experiment(double x0, std::size_t n_grid = 4096) {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.s = 2.0;
    cfg.grid_size = n_grid;
    cfg.dt = 1e-2;
    cfg.horizon = 1.0;
    const GridFunction v0 = GridFunction::zeros(n_grid, two_pi);
    const GridFunction g = GridFunction::sample(
        n_grid, two_pi, [](double x) { return 0.2 * std::sin(x); });
    return ExperimentConfig{cfg, v0, g, x0, 0.2, {1, 2}};
}

} // namespace

TEST_CASE("build_pair arithmetic and exactness") {
    const std::size_t n_grid = 2048;
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.s = 2.0;
    cfg.grid_size = n_grid;
    cfg.dt = 1e-2;
    // ||g||_2 = 2: amplitude sqrt(2) on sin
    const GridFunction g = GridFunction::sample(
        n_grid, two_pi, [](double x) { return std::sqrt(2.0) * std::sin(x); });
    const GridFunction v0 = GridFunction::sample(
        n_grid, two_pi, [](double x) { return 0.05 * std::cos(x); });
    ExperimentConfig ec{cfg, v0, g, M_PI, 0.2, {8}};
    ec.validate();

    const double g_norm = sobolev_norm(g, 2.0);
    CHECK(g_norm == doctest::Approx(2.0).epsilon(1e-12));

    const BuiltPair pair = build_pair(ec, 8, 0.5, 1.0);
    // r_n = m ||g||_s / (8 n) = 0.5 * 2 / 64
    CHECK(pair.r_n == doctest::Approx(0.015625).epsilon(1e-12));

    // z~ - z = g / n exactly, so the gap is ||g||_s / n
    const double gap = sobolev_norm(pair.z_tilde - pair.z, 2.0);
    CHECK(std::abs(gap * 8.0 - g_norm) <= 1e-10 * g_norm);

    // w has the prescribed norm and support
    const GridFunction w = pair.z - v0;
    CHECK(std::abs(sobolev_norm(w, 2.0) - 0.05) <= 1e-10 * 0.05);
    const double halfwidth = pair.r_n / 1.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double dist = std::abs(std::remainder(w.x(j) - M_PI, two_pi));
        if (dist >= halfwidth) CHECK(w[j] == 0.0);
    }

    CHECK_THROWS_AS(build_pair(ec, 8, 0.0, 1.0), ParameterError);
}

TEST_CASE("build_pair resolution error names an adequate grid") {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.grid_size = 256;
    cfg.dt = 1e-2;
    const GridFunction g = GridFunction::sample(
        256, two_pi, [](double x) { return std::sqrt(2.0) * std::sin(x); });
    ExperimentConfig ec{cfg, GridFunction::zeros(256, two_pi), g, M_PI, 0.2, {8}};
    try {
        build_pair(ec, 8, 0.5, 1.0);
        FAIL("expected ResolutionError");
    } catch (const ResolutionError& e) {
        // halfwidth = 0.015625 needs n >= 4 L / halfwidth ~ 1608
        CHECK(e.minimal_grid_size >= 1608);
        CHECK(e.minimal_grid_size % 2 == 0);
    }
}

TEST_CASE("experiment config validation") {
    ExperimentConfig ec = mini_experiment(M_PI / 2.0, 256);
    ec.cfg.dt = 1e-2;
    ec.n_values = {1};
    ec.validate();

    ExperimentConfig bad = ec;
    bad.g = GridFunction::zeros(256, two_pi);
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    bad = ec;
    bad.R = 0.0;
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    bad = ec;
    bad.n_values = {};
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    bad = ec;
    bad.n_values = {0};
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    bad = ec;
    bad.v0 = GridFunction::zeros(128, two_pi);
    CHECK_THROWS_AS(bad.validate(), InvalidInputError);
}

TEST_CASE("rescale_to_time_T and the solution-map conjugation") {
    const std::size_t n = 128;
    const GridFunction v = rodflow::testing::random_smooth(n, two_pi, 5, 4, 0.3);
    CHECK(sup_diff(rescale_to_time_T(v, 1.0), v) == 0.0);
    CHECK_THROWS_AS(rescale_to_time_T(v, 0.0), ParameterError);

    // Phi_T(v0) = (1/T) Phi_1(T v0) with matched step counts
    const GridFunction v0 = GridFunction::sample(
        n, two_pi, [](double x) { return 0.05 * std::sin(x); });
    for (double T : {0.5, 2.0}) {
        SolverConfig direct_cfg;
        direct_cfg.gamma = 2.0;
        direct_cfg.grid_size = n;
        direct_cfg.dt = 1e-3 * T;
        direct_cfg.horizon = T;
        direct_cfg.snapshot_stride = 1000;
        const Trajectory direct = integrate_eulerian(v0, direct_cfg);
        REQUIRE(direct.completed());

        SolverConfig unit_cfg = direct_cfg;
        unit_cfg.dt = 1e-3;
        unit_cfg.horizon = 1.0;
        const Trajectory conjugated =
            integrate_eulerian(rescale_to_time_T(v0, T), unit_cfg);
        REQUIRE(conjugated.completed());

        CHECK(sup_diff(direct.final_state(),
                       rescale_to_time_T(conjugated.final_state(), 1.0 / T)) <=
              1e-6);
    }
}

TEST_CASE("mini experiment: records, gaps, separations, flags") {
    const ExperimentConfig ec = mini_experiment(M_PI / 2.0);
    const ExperimentResult result = run_experiment(ec, 1);

    REQUIRE(result.records.size() == 2);
    const double g_norm = sobolev_norm(ec.g, 2.0);
    for (const ExperimentRecord& rec : result.records) {
        CHECK(rec.ok);
        CHECK(std::abs(rec.initial_gap * rec.n - g_norm) <= 1e-10 * g_norm);
        CHECK(rec.r_n > 0.0);
        CHECK(rec.final_gap_s > 0.0);
        CHECK(rec.final_gap_y_s2 > 0.0);
        CHECK(rec.supports_disjoint);
        CHECK(rec.support_contained);
    }

    const ExperimentSummary& s = result.summary;
    CHECK(s.x0_used == doctest::Approx(M_PI / 2.0));
    CHECK(s.m == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    CHECK(s.L >= 1.0);
    CHECK(s.L <= 1.5);
    CHECK(s.construction_exact);
    CHECK(s.separation_ok);
    CHECK(s.supports_disjoint_all);
    // n doubling halves the initial gap; an 8x decrease needs n_max/n_min >= 8
    CHECK(s.initial_gap_ratio == doctest::Approx(2.0).epsilon(1e-10));
    CHECK_FALSE(s.witness_ok);
    // separation tracks m ||g||_s / n within the quadratic corrections
    for (const ExperimentRecord& rec : result.records) {
        const double predicted = s.m * g_norm / rec.n;
        CHECK(rec.phi_separation >= 0.5 * predicted);
        CHECK(rec.phi_separation <= 2.0 * predicted);
    }
    // Eulerian cross-check was run at the smallest n and stayed close
    CHECK(s.eulerian_cross_check_sup >= 0.0);
    CHECK(s.eulerian_cross_check_sup <= 1e-4);
}

TEST_CASE("experiment is deterministic across thread counts") {
    const ExperimentConfig ec = mini_experiment(M_PI / 2.0);
    const ExperimentResult a = run_experiment(ec, 1);
    const ExperimentResult b = run_experiment(ec, 2);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].initial_gap == b.records[i].initial_gap);
        CHECK(a.records[i].final_gap_s == b.records[i].final_gap_s);
        CHECK(a.records[i].final_gap_y_s2 == b.records[i].final_gap_y_s2);
        CHECK(a.records[i].phi_separation == b.records[i].phi_separation);
    }
    CHECK(a.summary.m == b.summary.m);
    CHECK(a.summary.L == b.summary.L);
}

TEST_CASE("degenerate requested probe point falls back to the strongest one") {
    // g(pi) = 0, so the configured x0 is degenerate; the experiment moves
    // it to the grid argmax of |d_exp| and reports both.
    const ExperimentConfig ec = mini_experiment(M_PI);
    const ExperimentResult result = run_experiment(ec, 2);
    CHECK(result.summary.x0_requested == doctest::Approx(M_PI));
    const double moved = result.summary.x0_used;
    CHECK(std::abs(std::abs(std::sin(moved)) - 1.0) <= 1e-3);
    CHECK(result.summary.m == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
    for (const ExperimentRecord& rec : result.records) CHECK(rec.ok);
}

TEST_CASE("unresolvable n values raise a resolution error upfront") {
    ExperimentConfig ec = mini_experiment(M_PI / 2.0, 1024);
    ec.n_values = {64};
    try {
        run_experiment(ec, 1);
        FAIL("expected ResolutionError");
    } catch (const ResolutionError& e) {
        CHECK(e.minimal_grid_size > 1024);
    }
}
