#include "rodflow/lagrangian.hpp"

#include <cmath>

#include "rodflow/spectral.hpp"

namespace rodflow {

GridFunction conjugated_b(const Diffeo& phi, const GridFunction& v,
                          double gamma, bool dealias) {
    const Diffeo inverse = invert_diffeo(phi);
    const GridFunction eulerian_v = compose(v, inverse);
    return compose(b_operator(eulerian_v, gamma, dealias), phi);
}

FlowDerivative spray_rhs(const FlowState& state, double gamma, bool dealias) {
    // The transported momentum Q = (y o phi) phi_x^2 obeys
    //   dQ/dt = (y_t + v y_x + 2 v_x y) o phi * phi_x^2
    //         = (3g-3)/g * (v v_x) o phi * phi_x^2,
    // which in the Lagrangian variables (phi_t = v o phi, phi_tx =
    // (v_x o phi) phi_x) reads coeff * v * v_x * phi_x with v_x the label
    // derivative of the v component. At gamma = 1 the coefficient
    // vanishes and psi stays exactly zero.
    const double coeff = (3.0 * gamma - 3.0) / gamma;
    GridFunction d_psi =
        coeff == 0.0
            ? GridFunction::zeros(state.v.size(), state.v.domain_length())
            : coeff * (state.v * derivative(state.v, 1) * state.phi.phi_x());
    return FlowDerivative{state.v,
                          conjugated_b(state.phi, state.v, gamma, dealias),
                          std::move(d_psi)};
}

namespace {

struct RawState {
    GridFunction disp;
    GridFunction v;
    GridFunction psi;
};

RawState advance(const RawState& s, double c, const FlowDerivative& d) {
    return RawState{s.disp + c * d.d_displacement, s.v + c * d.d_v,
                    s.psi + c * d.d_psi};
}

FlowDerivative rhs_raw(const RawState& s, double gamma, bool dealias) {
    FlowState state{Diffeo(s.disp), s.v, s.psi};
    return spray_rhs(state, gamma, dealias);
}

} // namespace

FlowState spray_step(const FlowState& state, double dt, double gamma,
                     bool dealias) {
    RawState s{state.phi.displacement(), state.v, state.psi};
    const FlowDerivative k1 = rhs_raw(s, gamma, dealias);
    const FlowDerivative k2 = rhs_raw(advance(s, 0.5 * dt, k1), gamma, dealias);
    const FlowDerivative k3 = rhs_raw(advance(s, 0.5 * dt, k2), gamma, dealias);
    const FlowDerivative k4 = rhs_raw(advance(s, dt, k3), gamma, dealias);
    const double w = dt / 6.0;
    return FlowState{
        Diffeo(s.disp + w * (k1.d_displacement + 2.0 * k2.d_displacement +
                             2.0 * k3.d_displacement + k4.d_displacement)),
        s.v + w * (k1.d_v + 2.0 * k2.d_v + 2.0 * k3.d_v + k4.d_v),
        s.psi + w * (k1.d_psi + 2.0 * k2.d_psi + 2.0 * k3.d_psi + k4.d_psi)};
}

FlowSequence integrate_spray(const GridFunction& v0, double t_end,
                             const SolverConfig& cfg,
                             std::optional<std::size_t> stride_override) {
    cfg.validate();
    if (v0.size() != cfg.grid_size || v0.domain_length() != cfg.domain_length)
        throw InvalidInputError("initial data does not live on the configured grid");

    const auto [dt, steps] = cfg.resolve_steps(v0, t_end);
    std::size_t stride = stride_override.value_or(cfg.snapshot_stride);
    const bool endpoints_only = stride == 0;
    if (!endpoints_only && steps % stride != 0)
        throw ParameterError("snapshot stride does not divide step count");

    const double gamma = cfg.gamma;
    const bool dealias = cfg.dealias;
    const std::size_t n = v0.size();
    const double length = v0.domain_length();

    FlowSequence seq;
    seq.dt = dt;

    RawState s{GridFunction::zeros(n, length), v0, GridFunction::zeros(n, length)};

    auto snapshot = [&](double t, const RawState& raw) {
        seq.times.push_back(t);
        seq.states.push_back(FlowState{Diffeo(raw.disp), raw.v, raw.psi});
    };
    auto record_diag = [&](double t, double mn, double mx) {
        seq.diag_times.push_back(t);
        seq.min_phi_x.push_back(mn);
        seq.max_phi_x.push_back(mx);
    };

    snapshot(0.0, s);
    record_diag(0.0, 1.0, 1.0);
    seq.terminated_at = 0.0;

    for (std::size_t step = 1; step <= steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        try {
            const FlowDerivative k1 = rhs_raw(s, gamma, dealias);
            const FlowDerivative k2 = rhs_raw(advance(s, 0.5 * dt, k1), gamma, dealias);
            const FlowDerivative k3 = rhs_raw(advance(s, 0.5 * dt, k2), gamma, dealias);
            const FlowDerivative k4 = rhs_raw(advance(s, dt, k3), gamma, dealias);
            const double w = dt / 6.0;
            s = RawState{
                s.disp + w * (k1.d_displacement + 2.0 * k2.d_displacement +
                              2.0 * k3.d_displacement + k4.d_displacement),
                s.v + w * (k1.d_v + 2.0 * k2.d_v + 2.0 * k3.d_v + k4.d_v),
                s.psi + w * (k1.d_psi + 2.0 * k2.d_psi + 2.0 * k3.d_psi + k4.d_psi)};
            Diffeo phi(s.disp); // validates the updated map
            const double mn = phi.min_phi_x();
            const double mx = phi.phi_x().max_value();
            record_diag(t, mn, mx);
            if (mn < cfg.blowup_floor) {
                seq.status = RunStatus::diffeo_loss;
                seq.reason = "min phi_x = " + std::to_string(mn) +
                             " fell below blowup_floor at t = " + std::to_string(t);
                seq.terminated_at = t;
                seq.times.push_back(t);
                seq.states.push_back(FlowState{std::move(phi), s.v, s.psi});
                return seq;
            }
            seq.terminated_at = t;
            const bool store =
                endpoints_only ? (step == steps) : (step % stride == 0);
            if (store) {
                seq.times.push_back(t);
                seq.states.push_back(FlowState{std::move(phi), s.v, s.psi});
            }
        } catch (const DiffeoError& e) {
            seq.status = RunStatus::diffeo_loss;
            seq.reason = "flow map stopped being a diffeomorphism near t = " +
                         std::to_string(t) + " (" + e.what() + ")";
            return seq;
        } catch (const Error& e) {
            seq.status = RunStatus::nonfinite;
            seq.reason = "state became non-finite near t = " + std::to_string(t) +
                         " (" + e.what() + ")";
            return seq;
        }
    }
    return seq;
}

Diffeo exp_map(const GridFunction& v0, const SolverConfig& cfg) {
    FlowSequence seq = integrate_spray(v0, 1.0, cfg, 0);
    if (!seq.completed())
        throw ExpDomainError("initial velocity outside the domain of exp: " +
                                 seq.reason,
                             seq.terminated_at);
    return seq.final_state().phi;
}

GridFunction d_exp(const GridFunction& v0, const GridFunction& h,
                   const SolverConfig& cfg, std::optional<double> eps) {
    v0.require_same_grid(h);
    const double e = eps.value_or(1e-4 * (1.0 + sobolev_norm(v0, cfg.s)) /
                                  (1.0 + sobolev_norm(h, cfg.s)));
    if (!(e > 0.0)) throw ParameterError("d_exp step must be positive");
    const Diffeo plus = exp_map(v0 + e * h, cfg);
    const Diffeo minus = exp_map(v0 - e * h, cfg);
    return (1.0 / (2.0 * e)) * (plus.displacement() - minus.displacement());
}

FlowProbe probe_exp_map(const GridFunction& v0, const GridFunction& g,
                        const SolverConfig& cfg) {
    GridFunction probe = d_exp(v0, g, cfg);
    double lip = 1.0;
    const GridFunction flows[3] = {v0, v0 + g, v0 - g};
    for (const GridFunction& w : flows) {
        FlowSequence seq = integrate_spray(w, 1.0, cfg, 0);
        if (!seq.completed())
            throw ExpDomainError(
                "Lipschitz probe flow left the domain of exp: " + seq.reason,
                seq.terminated_at);
        for (double m : seq.max_phi_x) lip = std::max(lip, m);
    }
    return FlowProbe{std::move(probe), lip};
}

MLEstimate estimate_m_L(const GridFunction& v0, const GridFunction& g,
                        double x0, const SolverConfig& cfg) {
    const double g_norm = sobolev_norm(g, cfg.s);
    if (!(g_norm > 0.0))
        throw ParameterError("probe direction g must have positive norm");
    FlowProbe probe = probe_exp_map(v0, g, cfg);
    const double value = evaluate(probe.d_exp_g, x0);
    const double m = std::abs(value) / g_norm;
    if (m <= 1e-10)
        throw DegenerateDirectionError(
            "d_exp(v0, g) vanishes at x0 = " + std::to_string(x0) +
            " (m = " + std::to_string(m) + "); perturb x0");
    return MLEstimate{m, probe.lipschitz};
}

GridFunction reconstruct_velocity(const FlowState& state) {
    return compose(state.v, invert_diffeo(state.phi));
}

} // namespace rodflow
