#ifndef RODFLOW_NONUNIFORM_HPP
#define RODFLOW_NONUNIFORM_HPP

#include <string>
#include <vector>

#include "rodflow/eulerian.hpp"
#include "rodflow/grid_function.hpp"

namespace rodflow {

struct ExperimentConfig {
    SolverConfig cfg;
    GridFunction v0; // base point, smooth
    GridFunction g;  // probe direction
    double x0;       // probe location
    double R;        // ball radius
    std::vector<int> n_values;

    void validate() const;
};

struct ExperimentRecord {
    int n = 0;
    double r_n = 0.0;
    double initial_gap = 0.0;      // ||z~_n - z_n||_s
    double final_gap_s = 0.0;      // ||v~(1) - v(1)||_s
    double final_gap_y_s2 = 0.0;   // ||y~(1) - y(1)||_{s-2}
    double phi_separation = 0.0;   // |phi~_n(x0) - phi_n(x0)|
    bool supports_disjoint = false;
    double w_norm_deviation = 0.0; // | ||w_n||_s - R/4 |
    bool support_contained = false;
    bool ok = false;
    std::string failure;
};

struct ExperimentSummary {
    double m = 0.0;
    double L = 0.0;
    double x0_requested = 0.0;
    double x0_used = 0.0;
    double g_norm = 0.0;
    double initial_gap_ratio = 0.0;          // first/last over ascending n
    double min_final_gap_s_top_half = 0.0;   // min over the largest half of n
    double min_final_gap_y_top_half = 0.0;
    double median_final_gap_y_s2 = 0.0;
    double empirical_gap_constant = 0.0;     // min y-gap (top half) / R
    double eulerian_cross_check_sup = -1.0;  // at the smallest n; -1 if absent
    bool construction_exact = false;
    bool separation_ok = false;
    bool supports_disjoint_all = false;
    bool witness_ok = false;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records; // ordered by input n_values
    ExperimentSummary summary;
};

struct BuiltPair {
    GridFunction z;
    GridFunction z_tilde;
    double r_n;
};

// r_n = m ||g||_s / (8n); w_n = bump at x0 of halfwidth r_n/L with
// ||w_n||_s = R/4; z_n = v0 + w_n, z~_n = z_n + g/n. Throws
// ResolutionError naming the smallest adequate grid size when the bump
// cannot be resolved.
BuiltPair build_pair(const ExperimentConfig& ec, int n, double m, double L);

// The full sweep: estimates (m, L) at the base point (moving x0 to the
// strongest grid point of the probe derivative when the configured one is
// degenerate), builds each pair, evolves both members to t = 1 along the
// spray, and measures gaps, separations and support flags. Records whose
// integration leaves the discrete domain are flagged and skipped by the
// summary statistics; if every record fails, throws ExperimentError.
ExperimentResult run_experiment(const ExperimentConfig& ec,
                                unsigned threads = 1);

// Spatial part of the time rescaling v -> lambda * v(lambda t).
GridFunction rescale_to_time_T(const GridFunction& v, double lambda);

} // namespace rodflow

#endif
