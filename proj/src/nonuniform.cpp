#include "rodflow/nonuniform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rodflow/conservation.hpp"
#include "rodflow/detail/interp.hpp"
#include "rodflow/detail/parallel.hpp"
#include "rodflow/lagrangian.hpp"
#include "rodflow/spectral.hpp"

namespace rodflow {

void ExperimentConfig::validate() const {
    cfg.validate();
    if (v0.size() != cfg.grid_size || v0.domain_length() != cfg.domain_length)
        throw InvalidInputError("v0 does not live on the configured grid");
    v0.require_same_grid(g);
    if (!(sobolev_norm(g, cfg.s) > 0.0))
        throw ParameterError("probe direction g must have positive H^s norm");
    if (!(R > 0.0)) throw ParameterError("ball radius R must be positive");
    if (!std::isfinite(x0)) throw ParameterError("x0 must be finite");
    if (n_values.empty()) throw ParameterError("n_values must be nonempty");
    for (int n : n_values)
        if (n < 1) throw ParameterError("every n must be >= 1");
}

BuiltPair build_pair(const ExperimentConfig& ec, int n, double m, double L) {
    if (!(m > 0.0) || !(L > 0.0))
        throw ParameterError("build_pair needs positive m and L");
    const double g_norm = sobolev_norm(ec.g, ec.cfg.s);
    const double r_n = m * g_norm / (8.0 * static_cast<double>(n));
    const double halfwidth = r_n / L;
    GridFunction w = bump(ec.x0, halfwidth, ec.cfg.s, ec.R / 4.0,
                          ec.cfg.grid_size, ec.cfg.domain_length);
    GridFunction z = ec.v0 + w;
    GridFunction z_tilde = z + (1.0 / static_cast<double>(n)) * ec.g;
    return BuiltPair{std::move(z), std::move(z_tilde), r_n};
}

namespace {

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t k = values.size();
    return k % 2 == 1 ? values[k / 2]
                      : 0.5 * (values[k / 2 - 1] + values[k / 2]);
}

// Step size for the Eulerian cross-check: the spray step is accuracy
// limited, but the advective term needs |v| k_max dt within the RK4
// stability region (~2.8 on the imaginary axis); use a factor-2 margin.
double cross_check_dt(const SolverConfig& cfg, double sup_v, double flow_dt) {
    const double k_max =
        M_PI * static_cast<double>(cfg.grid_size) / cfg.domain_length;
    const double stab = 1.4 / (k_max * std::max(sup_v, 1e-6));
    const double raw = std::min(flow_dt, stab);
    const double steps = std::ceil(1.0 / raw);
    return 1.0 / steps;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& ec, unsigned threads) {
    ec.validate();
    const SolverConfig& cfg = ec.cfg;
    const double g_norm = sobolev_norm(ec.g, cfg.s);

    // Probe the differential of exp at the base point and bound the
    // Lipschitz constant of the nearby flow maps.
    FlowProbe probe = probe_exp_map(ec.v0, ec.g, cfg);
    double x0_used = ec.x0;
    double m = std::abs(evaluate(probe.d_exp_g, ec.x0)) / g_norm;
    if (m <= 1e-10) {
        // Degenerate probe point; move x0 to the strongest grid point.
        std::size_t best = 0;
        for (std::size_t j = 1; j < probe.d_exp_g.size(); ++j)
            if (std::abs(probe.d_exp_g[j]) > std::abs(probe.d_exp_g[best]))
                best = j;
        x0_used = probe.d_exp_g.x(best);
        m = std::abs(probe.d_exp_g[best]) / g_norm;
        if (m <= 1e-10)
            throw DegenerateDirectionError(
                "d_exp(v0, g) vanishes on the whole grid; g is a degenerate "
                "probe direction at this base point");
    }
    const double L = probe.lipschitz;

    ExperimentConfig used = ec;
    used.x0 = x0_used;

    // Every n must be resolvable before any integration starts.
    std::size_t minimal_grid = 0;
    for (int n : ec.n_values) {
        const double halfwidth = m * g_norm / (8.0 * n) / L;
        const double dx = cfg.domain_length / static_cast<double>(cfg.grid_size);
        if (halfwidth < 4.0 * dx) {
            std::size_t need = static_cast<std::size_t>(
                std::ceil(4.0 * cfg.domain_length / halfwidth));
            if (need % 2 != 0) ++need;
            minimal_grid = std::max(minimal_grid, need);
        }
    }
    if (minimal_grid > 0)
        throw ResolutionError(
            "bump for the largest n is unresolvable at grid size " +
                std::to_string(cfg.grid_size) + "; need at least " +
                std::to_string(minimal_grid),
            minimal_grid);

    const std::size_t count = ec.n_values.size();
    std::vector<ExperimentRecord> records(count);
    std::vector<std::optional<GridFunction>> final_velocity(count);
    std::vector<std::optional<GridFunction>> initial_z(count);

    detail::parallel_for(count, threads, [&](std::size_t i) {
        ExperimentRecord& rec = records[i];
        rec.n = ec.n_values[i];
        try {
            BuiltPair pair = build_pair(used, rec.n, m, L);
            rec.r_n = pair.r_n;
            rec.initial_gap = sobolev_norm(pair.z_tilde - pair.z, cfg.s);

            const GridFunction w = pair.z - ec.v0;
            rec.w_norm_deviation =
                std::abs(sobolev_norm(w, cfg.s) - ec.R / 4.0);
            const double halfwidth = pair.r_n / L;
            bool contained = true;
            for (std::size_t j = 0; j < w.size(); ++j) {
                const double dist =
                    std::abs(std::remainder(w.x(j) - x0_used, cfg.domain_length));
                if (w[j] != 0.0 && dist >= halfwidth) contained = false;
            }
            rec.support_contained = contained;
            initial_z[i] = pair.z;

            FlowSequence flow = integrate_spray(pair.z, 1.0, cfg, 0);
            if (!flow.completed()) {
                rec.failure = "flow of z_n: " + flow.reason;
                return;
            }
            FlowSequence flow_tilde = integrate_spray(pair.z_tilde, 1.0, cfg, 0);
            if (!flow_tilde.completed()) {
                rec.failure = "flow of z~_n: " + flow_tilde.reason;
                return;
            }

            const FlowState& end = flow.final_state();
            const FlowState& end_tilde = flow_tilde.final_state();
            const GridFunction v1 = reconstruct_velocity(end);
            const GridFunction v1_tilde = reconstruct_velocity(end_tilde);
            rec.final_gap_s = sobolev_norm(v1_tilde - v1, cfg.s);
            rec.final_gap_y_s2 = sobolev_norm(
                y_of(v1_tilde, cfg.gamma) - y_of(v1, cfg.gamma), cfg.s - 2.0);

            detail::Evaluator disp(end.phi.displacement());
            detail::Evaluator disp_tilde(end_tilde.phi.displacement());
            rec.phi_separation = std::abs(disp_tilde(x0_used) - disp(x0_used));
            rec.supports_disjoint = rec.r_n <= rec.phi_separation / 4.0;

            final_velocity[i] = v1;
            rec.ok = true;
        } catch (const Error& e) {
            rec.ok = false;
            rec.failure = e.what();
        }
    });

    ExperimentSummary summary;
    summary.m = m;
    summary.L = L;
    summary.x0_requested = ec.x0;
    summary.x0_used = x0_used;
    summary.g_norm = g_norm;

    // Completed records sorted by ascending n drive the statistics.
    std::vector<std::size_t> done;
    for (std::size_t i = 0; i < count; ++i)
        if (records[i].ok) done.push_back(i);
    if (done.empty())
        throw ExperimentError("every record of the experiment failed; first: " +
                              records.front().failure);
    std::sort(done.begin(), done.end(), [&](std::size_t a, std::size_t b) {
        return records[a].n < records[b].n;
    });

    summary.initial_gap_ratio =
        records[done.front()].initial_gap / records[done.back()].initial_gap;

    const std::size_t top_half = (done.size() + 1) / 2;
    double min_gap_s = std::numeric_limits<double>::infinity();
    double min_gap_y = std::numeric_limits<double>::infinity();
    for (std::size_t r = done.size() - top_half; r < done.size(); ++r) {
        min_gap_s = std::min(min_gap_s, records[done[r]].final_gap_s);
        min_gap_y = std::min(min_gap_y, records[done[r]].final_gap_y_s2);
    }
    summary.min_final_gap_s_top_half = min_gap_s;
    summary.min_final_gap_y_top_half = min_gap_y;

    std::vector<double> y_gaps;
    for (std::size_t i : done) y_gaps.push_back(records[i].final_gap_y_s2);
    summary.median_final_gap_y_s2 = median(y_gaps);
    summary.empirical_gap_constant = min_gap_y / ec.R;

    summary.construction_exact = true;
    for (const ExperimentRecord& rec : records) {
        const double gap_dev =
            std::abs(rec.initial_gap * rec.n - g_norm) / g_norm;
        if (gap_dev > 1e-10 || rec.w_norm_deviation > 1e-10 * (ec.R / 4.0) ||
            !rec.support_contained)
            summary.construction_exact = false;
    }

    summary.separation_ok = true;
    summary.supports_disjoint_all = true;
    for (std::size_t i : done) {
        const ExperimentRecord& rec = records[i];
        const double bound = 0.8 * (m / (2.0 * rec.n)) * g_norm;
        if (rec.phi_separation < bound) summary.separation_ok = false;
        if (!rec.supports_disjoint) summary.supports_disjoint_all = false;
    }

    summary.witness_ok =
        summary.min_final_gap_y_top_half >=
            0.5 * summary.median_final_gap_y_s2 &&
        summary.initial_gap_ratio >= 8.0 * (1.0 - 1e-9);

    // Eulerian cross-check at the smallest completed n.
    const std::size_t smallest = done.front();
    if (initial_z[smallest] && final_velocity[smallest]) {
        const GridFunction& z = *initial_z[smallest];
        SolverConfig cross = cfg;
        cross.horizon = 1.0;
        const auto [flow_dt, flow_steps] = cfg.resolve_steps(z, 1.0);
        static_cast<void>(flow_steps);
        cross.dt = cross_check_dt(cfg, z.sup_norm(), flow_dt);
        const std::size_t steps =
            static_cast<std::size_t>(std::llround(1.0 / *cross.dt));
        cross.snapshot_stride = steps;
        Trajectory eulerian = integrate_eulerian(z, cross);
        if (eulerian.completed()) {
            summary.eulerian_cross_check_sup =
                (eulerian.final_state() - *final_velocity[smallest]).sup_norm();
        }
    }

    return ExperimentResult{std::move(records), summary};
}

GridFunction rescale_to_time_T(const GridFunction& v, double lambda) {
    if (lambda == 0.0)
        throw ParameterError("time rescaling requires lambda != 0");
    return lambda * v;
}

} // namespace rodflow
