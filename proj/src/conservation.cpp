#include "rodflow/conservation.hpp"

#include <algorithm>

#include "rodflow/spectral.hpp"

namespace rodflow {

GridFunction y_of(const GridFunction& v, double gamma) {
    if (gamma == 0.0) throw ParameterError("y_of requires gamma != 0");
    return v - (1.0 / (gamma * gamma)) * derivative(v, 2);
}

double ConservationReport::max_residual_sup() const {
    return residual_sup.empty()
               ? 0.0
               : *std::max_element(residual_sup.begin(), residual_sup.end());
}

double ConservationReport::max_residual_s_minus_2() const {
    return residual_s_minus_2.empty()
               ? 0.0
               : *std::max_element(residual_s_minus_2.begin(),
                                   residual_s_minus_2.end());
}

namespace {

GridFunction transported_momentum(const FlowState& state, double gamma) {
    const GridFunction v_rec = reconstruct_velocity(state);
    return compose(y_of(v_rec, gamma), state.phi) * state.phi.phi_x() *
           state.phi.phi_x();
}

} // namespace

ConservationReport conservation_residual(const FlowSequence& flow,
                                         const GridFunction& v0, double gamma,
                                         double s) {
    if (flow.states.empty())
        throw InvalidInputError("conservation_residual needs a nonempty flow");
    v0.require_same_grid(flow.states.front().v);

    const GridFunction y0 = y_of(v0, gamma);
    ConservationReport report;
    report.times = flow.times;
    for (const FlowState& state : flow.states) {
        const GridFunction lhs = transported_momentum(state, gamma);
        const GridFunction diff = lhs - (y0 + state.psi);
        report.residual_s_minus_2.push_back(sobolev_norm(diff, s - 2.0));
        report.residual_sup.push_back(diff.sup_norm());
        report.psi_norm_s_minus_1.push_back(sobolev_norm(state.psi, s - 1.0));
    }
    return report;
}

GridFunction reconstruct_y1(const GridFunction& y0, const Diffeo& phi,
                            const GridFunction& psi) {
    const GridFunction scaled = (y0 + psi) / (phi.phi_x() * phi.phi_x());
    return compose(scaled, invert_diffeo(phi));
}

double instantaneous_identity_check(const FlowState& state, double gamma,
                                    double micro_step, bool dealias) {
    if (!(micro_step > 0.0))
        throw ParameterError("micro_step must be positive");
    const FlowState forward = spray_step(state, micro_step, gamma, dealias);
    const FlowState backward = spray_step(state, -micro_step, gamma, dealias);
    const GridFunction rate =
        (1.0 / (2.0 * micro_step)) * (transported_momentum(forward, gamma) -
                                      transported_momentum(backward, gamma));
    const double coeff = (3.0 * gamma - 3.0) / gamma;
    const GridFunction closed_form =
        coeff * (state.v * derivative(state.v, 1) * state.phi.phi_x());
    return (rate - closed_form).sup_norm();
}

} // namespace rodflow
