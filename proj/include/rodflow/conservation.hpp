#ifndef RODFLOW_CONSERVATION_HPP
#define RODFLOW_CONSERVATION_HPP

#include <vector>

#include "rodflow/diffeo.hpp"
#include "rodflow/grid_function.hpp"
#include "rodflow/lagrangian.hpp"

namespace rodflow {

// y = (1 - gamma^{-2} d^2/dx^2) v, computed spectrally.
GridFunction y_of(const GridFunction& v, double gamma);

// Residual of the transport identity
//   (y(t) o phi(t)) * phi_x(t)^2 = y(0) + psi(t)
// along a spray flow, per stored snapshot.
struct ConservationReport {
    std::vector<double> times;
    std::vector<double> residual_s_minus_2;
    std::vector<double> residual_sup;
    std::vector<double> psi_norm_s_minus_1;

    double max_residual_sup() const;
    double max_residual_s_minus_2() const;
};

ConservationReport conservation_residual(const FlowSequence& flow,
                                         const GridFunction& v0, double gamma,
                                         double s);

// y(1) = ((y0 + psi) / phi_x^2) o phi^{-1}.
GridFunction reconstruct_y1(const GridFunction& y0, const Diffeo& phi,
                            const GridFunction& psi);

// Sup-norm discrepancy between the finite-difference time derivative of
// (y o phi) phi_x^2 over a +-micro_step RK4 step and the closed-form rate
// (3*gamma-3)/gamma * v * v_x / phi_x at the given state.
double instantaneous_identity_check(const FlowState& state, double gamma,
                                    double micro_step = 1e-4,
                                    bool dealias = false);

} // namespace rodflow

#endif
