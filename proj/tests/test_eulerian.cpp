#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rodflow/eulerian.hpp"
#include "rodflow/spectral.hpp"
#include "test_helpers.hpp"

using namespace rodflow;
using rodflow::testing::random_smooth;
using rodflow::testing::sup_diff;

namespace {

constexpr double two_pi = 2.0 * M_PI;

GridFunction sine(std::size_t n, double amp = 1.0) {
    return GridFunction::sample(
        n, two_pi, [&](double x) { return amp * std::sin(x); });
}

// Periodic Green's function of (1 - gamma^{-2} d^2/dx^2) on length L:
//   G(t) = (gamma/2) cosh(gamma (L/2 - |t|)) / sinh(gamma L / 2),
// t in [-L/2, L/2]. Quadrature oracle for the Helmholtz inverse that
// never touches the Fourier machinery; the kink at t = 0 is an endpoint
// of both Simpson panels.
double green(double t, double gamma, double L) {
    return 0.5 * gamma * std::cosh(gamma * (L / 2.0 - std::abs(t))) /
           std::sinh(gamma * L / 2.0);
}

template <class F>
double simpson(F&& f, double a, double b, int panels) {
    const double h = (b - a) / (2.0 * panels);
    double sum = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i)
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// (1 - gamma^{-2} dxx)^{-1} w at x by convolution with the Green's
// function, for analytic w.
template <class W>
double helmholtz_by_quadrature(W&& w, double x, double gamma, double L) {
    auto integrand = [&](double t) { return green(t, gamma, L) * w(x - t); };
    return simpson(integrand, -L / 2.0, 0.0, 1000) +
           simpson(integrand, 0.0, L / 2.0, 1000);
}

GridFunction shift_cells(const GridFunction& f, std::size_t cells) {
    std::vector<double> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j)
        out[j] = f[(j + f.size() - cells % f.size()) % f.size()];
    return GridFunction(std::move(out), f.domain_length());
}

} // namespace

TEST_CASE("b_operator trivial inputs") {
    const GridFunction z = GridFunction::zeros(64, two_pi);
    CHECK(b_operator(z, 2.0).sup_norm() == 0.0);
    const GridFunction c = GridFunction::constant(64, two_pi, 1.7);
    CHECK(b_operator(c, 2.0).sup_norm() <= 1e-14);
    CHECK_THROWS_AS(b_operator(z, 0.0), ParameterError);
}

TEST_CASE("b_operator on sine at gamma = 3: hand value and quadrature oracle") {
    const std::size_t n = 128;
    const GridFunction v = sine(n);
    const GridFunction b = b_operator(v, 3.0);

    // (gamma-3)/gamma = 0; v_x v_xx = -sin(2x)/2; inner = sin(2x)/18;
    // multiplier at k=2: 1/(1 + (2/3)^2) = 9/13 -> sin(2x)/26.
    const GridFunction expect = GridFunction::sample(
        n, two_pi, [](double x) { return std::sin(2.0 * x) / 26.0; });
    CHECK(sup_diff(b, expect) <= 1e-9);

    // Independent quadrature route for the same value.
    auto inner = [](double y) { return std::sin(2.0 * y) / 18.0; };
    for (std::size_t j = 0; j < n; j += 7) {
        const double oracle =
            helmholtz_by_quadrature(inner, v.x(j), 3.0, two_pi);
        CHECK(std::abs(b[j] - oracle) <= 1e-9);
    }
}

TEST_CASE("eulerian_rhs values") {
    const GridFunction z = GridFunction::zeros(64, two_pi);
    CHECK(eulerian_rhs(z, 2.0).sup_norm() == 0.0);
    const GridFunction c = GridFunction::constant(64, two_pi, -0.4);
    CHECK(eulerian_rhs(c, 2.0).sup_norm() <= 1e-14);

    const std::size_t n = 128;
    const GridFunction v = sine(n);
    const GridFunction expect = GridFunction::sample(n, two_pi, [](double x) {
        return std::sin(2.0 * x) * (1.0 / 26.0 - 0.5);
    });
    CHECK(sup_diff(eulerian_rhs(v, 3.0), expect) <= 1e-9);
}

TEST_CASE("integration: zero and constant steady states") {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.grid_size = 64;
    cfg.dt = 1e-2;
    cfg.horizon = 1.0;

    const Trajectory z = integrate_eulerian(GridFunction::zeros(64, two_pi), cfg);
    CHECK(z.completed());
    CHECK(z.final_state().sup_norm() == 0.0);

    const GridFunction c = GridFunction::constant(64, two_pi, 0.3);
    const Trajectory t = integrate_eulerian(c, cfg);
    CHECK(t.completed());
    for (const GridFunction& state : t.states)
        CHECK(sup_diff(state, c) <= 1e-12);
}

TEST_CASE("rk4 self-convergence against a fine reference") {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.grid_size = 128;
    cfg.horizon = 0.5;
    const GridFunction v0 = sine(128, 0.8);

    auto final_at = [&](double dt) {
        SolverConfig c = cfg;
        c.dt = dt;
        c.snapshot_stride = static_cast<std::size_t>(std::llround(0.5 / dt));
        const Trajectory t = integrate_eulerian(v0, c);
        REQUIRE(t.completed());
        return t.final_state();
    };

    const GridFunction ref = final_at(0.0025 / 8.0);
    const double e1 = sup_diff(final_at(0.01), ref);
    const double e2 = sup_diff(final_at(0.005), ref);
    const double e3 = sup_diff(final_at(0.0025), ref);
    CHECK(e1 > 1e-13); // measurably above roundoff
    const double r12 = e1 / e2;
    const double r23 = e2 / e3;
    // order in [3.7, 4.3] <=> ratio in [2^3.7, 2^4.3]
    CHECK(r12 >= 13.0);
    CHECK(r12 <= 19.8);
    CHECK(r23 >= 13.0);
    CHECK(r23 <= 19.8);
}

TEST_CASE("translation equivariance") {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.grid_size = 128;
    cfg.dt = 5e-3;
    cfg.horizon = 0.5;
    cfg.snapshot_stride = 100;

    const GridFunction v0 = random_smooth(128, two_pi, 17, 5, 0.3);
    const std::size_t cells = 32;
    const Trajectory base = integrate_eulerian(v0, cfg);
    const Trajectory shifted = integrate_eulerian(shift_cells(v0, cells), cfg);
    REQUIRE(base.completed());
    REQUIRE(shifted.completed());
    CHECK(sup_diff(shifted.final_state(),
                   shift_cells(base.final_state(), cells)) <= 1e-8);
}

TEST_CASE("time rescaling symmetry") {
    const std::size_t n = 128;
    const GridFunction v0 = GridFunction::sample(
        n, two_pi, [](double x) { return 0.1 * std::sin(x) + 0.05 * std::cos(2 * x); });

    SolverConfig base;
    base.gamma = 2.0;
    base.grid_size = n;
    base.dt = 2e-3;
    base.horizon = 1.0;
    base.snapshot_stride = 500;
    const Trajectory ref = integrate_eulerian(v0, base);
    REQUIRE(ref.completed());

    for (double lambda : {0.5, 2.0}) {
        SolverConfig scaled = base;
        scaled.dt = *base.dt / lambda;
        scaled.horizon = base.horizon / lambda;
        scaled.snapshot_stride = 500;
        const Trajectory t = integrate_eulerian(lambda * v0, scaled);
        REQUIRE(t.completed());
        CHECK(sup_diff(t.final_state(), lambda * ref.final_state()) <= 1e-6);
    }
}

TEST_CASE("blow-up detection yields a partial, finite trajectory") {
    SolverConfig cfg;
    cfg.gamma = 2.0;
    cfg.grid_size = 128;
    cfg.dt = 2e-3;
    cfg.horizon = 2.0;
    cfg.norm_cap = 2.5;

    const Trajectory t = integrate_eulerian(sine(128, 2.0), cfg);
    CHECK(t.status == RunStatus::blowup);
    CHECK(t.terminated_at < 2.0);
    CHECK(t.terminated_at > 0.0);
    CHECK(!t.reason.empty());
    for (const GridFunction& state : t.states)
        for (std::size_t j = 0; j < state.size(); ++j)
            CHECK(std::isfinite(state[j]));

    // cap below the initial slope: report at once
    SolverConfig strict = cfg;
    strict.norm_cap = 1.0;
    const Trajectory t0 = integrate_eulerian(sine(128, 2.0), strict);
    CHECK(t0.status == RunStatus::blowup);
    CHECK(t0.terminated_at == 0.0);
    CHECK(t0.states.size() == 1);
}

TEST_CASE("solver config validation") {
    SolverConfig cfg;
    cfg.grid_size = 64;
    const GridFunction v0 = sine(64, 1.0);

    SolverConfig bad = cfg;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(integrate_eulerian(v0, bad), ParameterError);

    bad = cfg;
    bad.s = 1.2;
    CHECK_THROWS_AS(integrate_eulerian(v0, bad), ParameterError);

    bad = cfg;
    bad.dt = 3e-3; // 1.0/3e-3 is not an integer
    CHECK_THROWS_AS(integrate_eulerian(v0, bad), ParameterError);

    bad = cfg;
    bad.dt = 1.0; // violates dt * sup|v0| < 10 dx
    CHECK_THROWS_AS(integrate_eulerian(v0, bad), ParameterError);

    bad = cfg;
    bad.dt = 1e-2;
    bad.snapshot_stride = 3; // does not divide 100 steps
    CHECK_THROWS_AS(integrate_eulerian(v0, bad), ParameterError);

    // auto step from the CFL rule: completes and lands on the horizon
    SolverConfig autostep = cfg;
    autostep.gamma = 2.0;
    autostep.horizon = 0.25;
    const Trajectory t = integrate_eulerian(0.1 * v0, autostep);
    CHECK(t.completed());
    CHECK(t.times.back() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("u_to_v and v_to_u") {
    const std::size_t n = 64;
    const GridFunction u = GridFunction::sample(
        n, two_pi, [](double x) { return std::sin(x) + 0.3 * std::cos(2 * x); });

    // gamma = 1: identity
    CHECK(sup_diff(u_to_v(u, 1.0), u) <= 1e-12);

    // gamma = 2: fundamental mode on the halved domain
    const GridFunction v = u_to_v(u, 2.0);
    CHECK(v.domain_length() == doctest::Approx(M_PI));
    const GridFunction expect = GridFunction::sample(n, M_PI, [](double x) {
        return std::sin(2.0 * x) + 0.3 * std::cos(4.0 * x);
    });
    CHECK(sup_diff(v, expect) <= 1e-10);

    // round trips, both signs of gamma
    for (double gamma : {2.0, 0.5, -1.0, -2.0}) {
        const GridFunction back = v_to_u(u_to_v(u, gamma), gamma);
        CHECK(back.domain_length() == doctest::Approx(two_pi));
        CHECK(sup_diff(back, u) <= 1e-10);
    }

    CHECK_THROWS_AS(u_to_v(u, 0.0), ParameterError);
    CHECK_THROWS_AS(v_to_u(u, 0.0), ParameterError);
}
