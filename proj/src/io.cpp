#include "rodflow/io.hpp"

#include <cstdio>
#include <fstream>

#include "rodflow/version.hpp"

namespace rodflow {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    return out;
}

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

void write_grid_csv(const std::filesystem::path& path, const GridFunction& f) {
    std::ofstream out = open_out(path);
    out << "x,value\n";
    for (std::size_t j = 0; j < f.size(); ++j)
        out << format_number(f.x(j)) << ',' << format_number(f[j]) << '\n';
}

void write_grid_json(const std::filesystem::path& path, const GridFunction& f) {
    nlohmann::json j;
    j["domain_length"] = f.domain_length();
    j["samples"] = f.samples();
    write_json(path, j);
}

GridFunction read_grid_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    nlohmann::json j = nlohmann::json::parse(in);
    return GridFunction(j.at("samples").get<std::vector<double>>(),
                        j.at("domain_length").get<double>());
}

void write_flow_snapshot_csv(const std::filesystem::path& path,
                             const FlowState& state) {
    std::ofstream out = open_out(path);
    out << "x,phi,phi_x,v,psi\n";
    const GridFunction& d = state.phi.displacement();
    for (std::size_t j = 0; j < d.size(); ++j) {
        out << format_number(d.x(j)) << ','
            << format_number(d.x(j) + d[j]) << ','
            << format_number(state.phi.phi_x()[j]) << ','
            << format_number(state.v[j]) << ','
            << format_number(state.psi[j]) << '\n';
    }
}

void write_conservation_csv(const std::filesystem::path& path,
                            const ConservationReport& report) {
    std::ofstream out = open_out(path);
    out << "t,residual_s2,residual_sup,psi_norm\n";
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        out << format_number(report.times[i]) << ','
            << format_number(report.residual_s_minus_2[i]) << ','
            << format_number(report.residual_sup[i]) << ','
            << format_number(report.psi_norm_s_minus_1[i]) << '\n';
    }
}

void write_experiment_csv(const std::filesystem::path& path,
                          const std::vector<ExperimentRecord>& records) {
    std::ofstream out = open_out(path);
    out << "n,r_n,initial_gap,final_gap_s,final_gap_y_s2,phi_separation,"
           "supports_disjoint\n";
    for (const ExperimentRecord& r : records) {
        out << r.n << ',' << format_number(r.r_n) << ','
            << format_number(r.initial_gap) << ','
            << format_number(r.final_gap_s) << ','
            << format_number(r.final_gap_y_s2) << ','
            << format_number(r.phi_separation) << ','
            << (r.supports_disjoint ? "true" : "false") << '\n';
    }
}

namespace {

nlohmann::json diagnostics_json(const std::vector<StepDiagnostics>& diags) {
    nlohmann::json arr = nlohmann::json::array();
    for (const StepDiagnostics& d : diags)
        arr.push_back({{"t", d.time},
                       {"sup_v", d.sup_v},
                       {"sup_vx", d.sup_vx},
                       {"norm_s", d.sobolev_s}});
    return arr;
}

} // namespace

nlohmann::json trajectory_manifest(const Trajectory& traj,
                                   const nlohmann::json& config_echo,
                                   const std::vector<std::string>& snapshots) {
    nlohmann::json j;
    j["config"] = config_echo;
    j["dt"] = traj.dt;
    j["times"] = traj.times;
    j["diagnostics"] = diagnostics_json(traj.diagnostics);
    j["status"] = to_string(traj.status);
    j["reason"] = traj.reason;
    j["terminated_at"] = traj.terminated_at;
    j["snapshots"] = snapshots;
    return j;
}

nlohmann::json flow_manifest(const FlowSequence& seq,
                             const nlohmann::json& config_echo,
                             const std::vector<std::string>& snapshots) {
    nlohmann::json j;
    j["config"] = config_echo;
    j["dt"] = seq.dt;
    j["times"] = seq.times;
    j["min_phi_x"] = seq.min_phi_x;
    j["max_phi_x"] = seq.max_phi_x;
    j["status"] = to_string(seq.status);
    j["reason"] = seq.reason;
    j["terminated_at"] = seq.terminated_at;
    j["snapshots"] = snapshots;
    return j;
}

nlohmann::json experiment_summary_json(const ExperimentSummary& s) {
    nlohmann::json j;
    j["m"] = s.m;
    j["L"] = s.L;
    j["x0_requested"] = s.x0_requested;
    j["x0_used"] = s.x0_used;
    j["g_norm"] = s.g_norm;
    j["initial_gap_ratio"] = s.initial_gap_ratio;
    j["min_final_gap_s_top_half"] = s.min_final_gap_s_top_half;
    j["min_final_gap_y_top_half"] = s.min_final_gap_y_top_half;
    j["median_final_gap_y_s2"] = s.median_final_gap_y_s2;
    j["empirical_gap_constant"] = s.empirical_gap_constant;
    j["eulerian_cross_check_sup"] = s.eulerian_cross_check_sup;
    j["construction_exact"] = s.construction_exact;
    j["separation_ok"] = s.separation_ok;
    j["supports_disjoint_all"] = s.supports_disjoint_all;
    j["witness_ok"] = s.witness_ok;
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

void RunManifest::write(const std::filesystem::path& out_dir) const {
    for (const std::string& rel : outputs)
        if (!std::filesystem::exists(out_dir / rel))
            throw Error("manifest lists missing output: " + rel);
    nlohmann::json j;
    j["artifact_version"] = artifact_version;
    j["config"] = config_echo;
    j["outputs"] = outputs;
    j["seed"] = seed;
    j["partial"] = partial;
    j["note"] = note;
    write_json(out_dir / "manifest.json", j);
}

} // namespace rodflow
