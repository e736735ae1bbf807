#ifndef RODFLOW_LAGRANGIAN_HPP
#define RODFLOW_LAGRANGIAN_HPP

#include <optional>
#include <string>
#include <vector>

#include "rodflow/diffeo.hpp"
#include "rodflow/eulerian.hpp"
#include "rodflow/grid_function.hpp"

namespace rodflow {

// State of the flow-map formulation: the diffeomorphism phi, the
// Lagrangian velocity v = phi_t, and the accumulated integral psi used by
// the conservation identity. All three live on one grid.
struct FlowState {
    Diffeo phi;
    GridFunction v;
    GridFunction psi;
};

struct FlowDerivative {
    GridFunction d_displacement;
    GridFunction d_v;
    GridFunction d_psi;
};

// B(v o phi^{-1}, v o phi^{-1}) o phi.
GridFunction conjugated_b(const Diffeo& phi, const GridFunction& v,
                          double gamma, bool dealias = false);

// d/dt (phi, v, psi) = (v, conjugated_b(phi, v),
//                       (3*gamma-3)/gamma * v * v_x * phi_x)
// where v_x is the label derivative of the v component; the psi rate is
// the time derivative of the transported momentum (y o phi) phi_x^2.
FlowDerivative spray_rhs(const FlowState& state, double gamma,
                         bool dealias = false);

// One RK4 step of the spray from an arbitrary state; dt may be negative.
FlowState spray_step(const FlowState& state, double dt, double gamma,
                     bool dealias = false);

struct FlowSequence {
    std::vector<double> times;     // stored snapshots
    std::vector<FlowState> states;
    std::vector<double> diag_times;  // every executed step, including t = 0
    std::vector<double> min_phi_x;
    std::vector<double> max_phi_x;
    RunStatus status = RunStatus::completed;
    std::string reason;
    double terminated_at = 0.0;
    double dt = 0.0;

    const FlowState& final_state() const { return states.back(); }
    bool completed() const { return status == RunStatus::completed; }
};

// RK4 on (phi, v, psi) from (id, v0, 0). Halts with a partial sequence
// when min phi_x falls below cfg.blowup_floor, the map stops being a
// diffeomorphism, or the state goes non-finite. stride_override, when
// given, replaces cfg.snapshot_stride; the value 0 stores only the
// endpoints.
FlowSequence integrate_spray(const GridFunction& v0, double t_end,
                             const SolverConfig& cfg,
                             std::optional<std::size_t> stride_override = {});

// Time-1 flow map of the spray. Throws ExpDomainError (carrying the
// failure time) when the integration terminates early.
Diffeo exp_map(const GridFunction& v0, const SolverConfig& cfg);

// Central finite difference of exp_map around v0 in direction h:
// (exp(v0 + eps h) - exp(v0 - eps h)) / (2 eps), displacement parts.
// Default eps = 1e-4 * (1 + ||v0||_s) / (1 + ||h||_s).
GridFunction d_exp(const GridFunction& v0, const GridFunction& h,
                   const SolverConfig& cfg,
                   std::optional<double> eps = {});

// d_exp in direction g together with a Lipschitz bound for the flows of
// v0 and v0 +- g (max of sup phi_x over every executed step).
struct FlowProbe {
    GridFunction d_exp_g;
    double lipschitz;
};
FlowProbe probe_exp_map(const GridFunction& v0, const GridFunction& g,
                        const SolverConfig& cfg);

struct MLEstimate {
    double m;
    double L;
};

// m = |d_exp(v0, g)(x0)| / ||g||_s, L = the Lipschitz bound above.
// Throws DegenerateDirectionError when m vanishes within 1e-10 (the
// caller should move x0).
MLEstimate estimate_m_L(const GridFunction& v0, const GridFunction& g,
                        double x0, const SolverConfig& cfg);

// Eulerian velocity carried by a flow state: v o phi^{-1}.
GridFunction reconstruct_velocity(const FlowState& state);

} // namespace rodflow

#endif
