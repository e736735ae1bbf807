#ifndef RODFLOW_EULERIAN_HPP
#define RODFLOW_EULERIAN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rodflow/grid_function.hpp"

namespace rodflow {

struct SolverConfig {
    double gamma = 1.0;
    double s = 2.0;            // Sobolev index, must be > 3/2
    std::size_t grid_size = 256;
    double domain_length = 2.0 * 3.14159265358979323846;
    std::optional<double> dt;  // absent: auto step from cfl_factor
    double cfl_factor = 0.25;
    double horizon = 1.0;      // T
    double blowup_floor = 1e-6;
    double norm_cap = 1e6;
    bool dealias = false;
    std::size_t snapshot_stride = 1;

    void validate() const;

    // Step size and count for integrating v0 up to t_end. With dt given,
    // t_end/dt must round to an integer (within a few ulp) and the
    // advection sanity bound dt * sup|v0| < 10 * dx must hold. Without dt,
    // uses cfl_factor * dx / max(1, sup|v0|) rounded so the steps divide
    // t_end exactly.
    std::pair<double, std::size_t> resolve_steps(const GridFunction& v0,
                                                 double t_end) const;
};

enum class RunStatus { completed, blowup, diffeo_loss, nonfinite };

std::string to_string(RunStatus status);

struct StepDiagnostics {
    double time;
    double sup_v;
    double sup_vx;
    double sobolev_s;
};

struct Trajectory {
    std::vector<double> times;                // stored snapshots
    std::vector<GridFunction> states;
    std::vector<StepDiagnostics> diagnostics; // every step, including t = 0
    RunStatus status = RunStatus::completed;
    std::string reason;
    double terminated_at = 0.0;
    double dt = 0.0;

    const GridFunction& final_state() const { return states.back(); }
    bool completed() const { return status == RunStatus::completed; }
};

// B(v,v) = (1 - gamma^{-2} dxx)^{-1} ( (gamma-3)/gamma * v v_x
//                                      - gamma^{-2} * v_x v_xx ).
GridFunction b_operator(const GridFunction& v, double gamma,
                        bool dealias = false);

// Right-hand side of v_t = -v v_x + B(v,v).
GridFunction eulerian_rhs(const GridFunction& v, double gamma,
                          bool dealias = false);

// Classical fixed-step RK4 from t = 0 to cfg.horizon. Halts early with a
// partial trajectory when sup|v_x| exceeds cfg.norm_cap or the state goes
// non-finite; never propagates NaN into the result.
Trajectory integrate_eulerian(const GridFunction& v0, const SolverConfig& cfg);

// Change of variables v(x) = u(gamma * x): maps u on a domain of length L
// to v on length L/|gamma| (negative gamma composes with the reflection).
GridFunction u_to_v(const GridFunction& u, double gamma);
GridFunction v_to_u(const GridFunction& v, double gamma);

} // namespace rodflow

#endif
