#include "rodflow/eulerian.hpp"

#include <cmath>
#include <limits>

#include "rodflow/detail/interp.hpp"
#include "rodflow/spectral.hpp"

namespace rodflow {

void SolverConfig::validate() const {
    if (gamma == 0.0) throw ParameterError("gamma must be nonzero");
    [[maybe_unused]] SobolevIndex checked_s(s);
    if (grid_size < 16 || grid_size % 2 != 0)
        throw ParameterError("grid size must be even and >= 16");
    if (!(domain_length > 0.0))
        throw ParameterError("domain length must be positive");
    if (dt && !(*dt > 0.0)) throw ParameterError("dt must be positive");
    if (!(cfl_factor > 0.0)) throw ParameterError("cfl_factor must be positive");
    if (!(horizon > 0.0)) throw ParameterError("horizon T must be positive");
    if (!(blowup_floor > 0.0))
        throw ParameterError("blowup_floor must be positive");
    if (!(norm_cap > 0.0)) throw ParameterError("norm_cap must be positive");
    if (snapshot_stride == 0)
        throw ParameterError("snapshot stride must be >= 1");
}

std::pair<double, std::size_t> SolverConfig::resolve_steps(
    const GridFunction& v0, double t_end) const {
    if (!(t_end > 0.0)) throw ParameterError("integration horizon must be positive");
    const double dx = domain_length / static_cast<double>(grid_size);
    double step;
    std::size_t steps;
    if (dt) {
        step = *dt;
        const double ratio = t_end / step;
        const double rounded = std::round(ratio);
        if (rounded < 1.0 ||
            std::abs(ratio - rounded) >
                4.0 * std::numeric_limits<double>::epsilon() * ratio)
            throw ParameterError("t_end/dt = " + std::to_string(ratio) +
                                 " is not an integer number of steps");
        steps = static_cast<std::size_t>(rounded);
        if (step * v0.sup_norm() >= 10.0 * dx)
            throw ParameterError(
                "dt violates the advection sanity bound dt*sup|v0| < 10*dx");
    } else {
        const double dt_raw = cfl_factor * dx / std::max(1.0, v0.sup_norm());
        steps = static_cast<std::size_t>(std::ceil(t_end / dt_raw));
        step = t_end / static_cast<double>(steps);
    }
    if (steps % snapshot_stride != 0)
        throw ParameterError("snapshot stride " + std::to_string(snapshot_stride) +
                             " does not divide step count " +
                             std::to_string(steps));
    return {step, steps};
}

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::completed: return "completed";
        case RunStatus::blowup: return "blowup";
        case RunStatus::diffeo_loss: return "diffeo_loss";
        case RunStatus::nonfinite: return "nonfinite";
    }
    return "unknown";
}

GridFunction b_operator(const GridFunction& v, double gamma, bool dealias) {
    if (gamma == 0.0) throw ParameterError("b_operator requires gamma != 0");
    const Spectrum sv(v);
    const GridFunction vx = derivative(sv, 1);
    const GridFunction vxx = derivative(sv, 2);
    const double c1 = (gamma - 3.0) / gamma;
    const double c2 = 1.0 / (gamma * gamma);
    const GridFunction inner =
        c1 * product(v, vx, dealias) - c2 * product(vx, vxx, dealias);
    return helmholtz_inverse(inner, gamma);
}

GridFunction eulerian_rhs(const GridFunction& v, double gamma, bool dealias) {
    if (gamma == 0.0) throw ParameterError("eulerian_rhs requires gamma != 0");
    const Spectrum sv(v);
    const GridFunction vx = derivative(sv, 1);
    const GridFunction vxx = derivative(sv, 2);
    const GridFunction advection = product(v, vx, dealias);
    const double c1 = (gamma - 3.0) / gamma;
    const double c2 = 1.0 / (gamma * gamma);
    const GridFunction inner =
        c1 * advection - c2 * product(vx, vxx, dealias);
    return -1.0 * advection + helmholtz_inverse(inner, gamma);
}

Trajectory integrate_eulerian(const GridFunction& v0, const SolverConfig& cfg) {
    cfg.validate();
    if (v0.size() != cfg.grid_size || v0.domain_length() != cfg.domain_length)
        throw InvalidInputError("initial data does not live on the configured grid");

    const auto [dt, steps] = cfg.resolve_steps(v0, cfg.horizon);
    const double gamma = cfg.gamma;
    const bool dealias = cfg.dealias;

    Trajectory traj;
    traj.dt = dt;

    auto diag_of = [&](double t, const GridFunction& v) {
        return StepDiagnostics{t, v.sup_norm(), derivative(v, 1).sup_norm(),
                               sobolev_norm(v, cfg.s)};
    };

    GridFunction v = v0;
    traj.times.push_back(0.0);
    traj.states.push_back(v);
    StepDiagnostics d0 = diag_of(0.0, v);
    traj.diagnostics.push_back(d0);
    traj.terminated_at = 0.0;
    if (d0.sup_vx > cfg.norm_cap) {
        traj.status = RunStatus::blowup;
        traj.reason = "initial data already exceeds norm_cap: sup|v_x| = " +
                      std::to_string(d0.sup_vx);
        return traj;
    }

    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        try {
            const GridFunction k1 = eulerian_rhs(v, gamma, dealias);
            const GridFunction k2 = eulerian_rhs(v + (0.5 * dt) * k1, gamma, dealias);
            const GridFunction k3 = eulerian_rhs(v + (0.5 * dt) * k2, gamma, dealias);
            const GridFunction k4 = eulerian_rhs(v + dt * k3, gamma, dealias);
            v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } catch (const Error& e) {
            traj.status = RunStatus::nonfinite;
            traj.reason = "state became non-finite at t = " + std::to_string(t) +
                          " (" + e.what() + ")";
            return traj;
        }
        const StepDiagnostics d = diag_of(t, v);
        traj.diagnostics.push_back(d);
        traj.terminated_at = t;
        if (d.sup_vx > cfg.norm_cap) {
            traj.status = RunStatus::blowup;
            traj.reason = "sup|v_x| = " + std::to_string(d.sup_vx) +
                          " exceeded norm_cap at t = " + std::to_string(t);
            traj.times.push_back(t);
            traj.states.push_back(v);
            return traj;
        }
        if (step % cfg.snapshot_stride == 0) {
            traj.times.push_back(t);
            traj.states.push_back(v);
        }
    }
    return traj;
}

namespace {

GridFunction rescale_domain(const GridFunction& f, double factor,
                            double new_length) {
    // g(x) = f(factor * x) on a domain of length new_length.
    detail::Evaluator ev(f);
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) * new_length / static_cast<double>(n);
        out[j] = ev(factor * x);
    }
    return GridFunction(std::move(out), new_length);
}

} // namespace

GridFunction u_to_v(const GridFunction& u, double gamma) {
    if (gamma == 0.0) throw ParameterError("u_to_v requires gamma != 0");
    return rescale_domain(u, gamma, u.domain_length() / std::abs(gamma));
}

GridFunction v_to_u(const GridFunction& v, double gamma) {
    if (gamma == 0.0) throw ParameterError("v_to_u requires gamma != 0");
    return rescale_domain(v, 1.0 / gamma, v.domain_length() * std::abs(gamma));
}

} // namespace rodflow
