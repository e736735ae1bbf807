// Command-line front end: config-driven simulation, conservation
// verification and the non-uniform-dependence experiment.
//
// Exit codes: 0 success, 1 configuration error, 2 integration failure or
// early termination (partial outputs are kept), 3 verification failed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rodflow/config.hpp"
#include "rodflow/conservation.hpp"
#include "rodflow/eulerian.hpp"
#include "rodflow/io.hpp"
#include "rodflow/lagrangian.hpp"
#include "rodflow/nonuniform.hpp"
#include "rodflow/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rodflow;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_integration = 2;
constexpr int exit_verification = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    int threads = 0; // 0: resolve from RODFLOW_THREADS, default 1
    int snapshot_stride = 0;
    bool dealias = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--config", opt.config_path, "configuration file (JSON or TOML)")
        ->required();
    cmd->add_option("--out", opt.out_dir, "output directory")->required();
    cmd->add_option("--threads", opt.threads,
                    "worker threads for independent records");
    cmd->add_option("--snapshot-stride", opt.snapshot_stride,
                    "store every k-th time step");
    cmd->add_flag("--dealias", opt.dealias, "use the 2/3-rule for products");
}

unsigned resolve_threads(int flag_value) {
    if (flag_value > 0) return static_cast<unsigned>(flag_value);
    if (const char* env = std::getenv("RODFLOW_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

const std::vector<std::string> solver_keys = {
    "gamma", "s",         "grid_size",    "N",
    "domain_length",      "dt",           "cfl_factor",
    "T",     "blowup_floor", "norm_cap",  "dealias",
    "snapshot_stride",    "seed"};

std::vector<std::string> with_keys(std::vector<std::string> base,
                                   const std::vector<std::string>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

SolverConfig load_solver(const json& raw, const CommonOptions& opt) {
    SolverConfig cfg = solver_config_from_json(raw);
    if (opt.snapshot_stride > 0)
        cfg.snapshot_stride = static_cast<std::size_t>(opt.snapshot_stride);
    if (opt.dealias) cfg.dealias = true;
    return cfg;
}

std::string snapshot_name(const std::string& prefix, std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%06zu.csv", prefix.c_str(), index);
    return buf;
}

int cmd_simulate(const CommonOptions& opt) {
    const json raw = load_config_file(opt.config_path);
    require_known_keys(raw, with_keys(solver_keys, {"formulation", "initial_data"}),
                       "simulate config");
    const SolverConfig cfg = load_solver(raw, opt);
    const long long seed = config_integer_or(raw, "seed", 0);
    const std::string formulation =
        config_string_or(raw, "formulation", "eulerian");
    if (formulation != "eulerian" && formulation != "lagrangian" &&
        formulation != "both")
        throw ConfigError("formulation must be eulerian, lagrangian or both");
    const json data_spec =
        raw.contains("initial_data") ? raw["initial_data"] : json{{"kind", "zero"}};
    const GridFunction v0 = initial_data_from_json(data_spec, cfg, seed);

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);

    RunManifest manifest;
    manifest.config_echo = raw;
    manifest.seed = seed;
    bool partial = false;
    std::string note;

    std::optional<Trajectory> eulerian;
    std::optional<FlowSequence> lagrangian;

    if (formulation == "eulerian" || formulation == "both") {
        eulerian = integrate_eulerian(v0, cfg);
        std::vector<std::string> files;
        for (std::size_t i = 0; i < eulerian->states.size(); ++i) {
            const std::string name = snapshot_name("eulerian", i);
            write_grid_csv(out / name, eulerian->states[i]);
            files.push_back(name);
            manifest.outputs.push_back(name);
        }
        write_json(out / "eulerian.json",
                   trajectory_manifest(*eulerian, raw, files));
        manifest.outputs.push_back("eulerian.json");
        if (!eulerian->completed()) {
            partial = true;
            note += "eulerian: " + eulerian->reason + "; ";
        }
    }
    if (formulation == "lagrangian" || formulation == "both") {
        lagrangian = integrate_spray(v0, cfg.horizon, cfg);
        std::vector<std::string> files;
        for (std::size_t i = 0; i < lagrangian->states.size(); ++i) {
            const std::string name = snapshot_name("lagrangian", i);
            write_flow_snapshot_csv(out / name, lagrangian->states[i]);
            files.push_back(name);
            manifest.outputs.push_back(name);
        }
        write_json(out / "lagrangian.json",
                   flow_manifest(*lagrangian, raw, files));
        manifest.outputs.push_back("lagrangian.json");
        if (!lagrangian->completed()) {
            partial = true;
            note += "lagrangian: " + lagrangian->reason + "; ";
        }
    }
    if (formulation == "both") {
        // Cross-check over the shared stored times.
        std::ofstream cross(out / "crosscheck.csv");
        cross << "t,sup_diff\n";
        const std::size_t common =
            std::min(eulerian->states.size(), lagrangian->states.size());
        for (std::size_t i = 0; i < common; ++i) {
            const GridFunction rec = reconstruct_velocity(lagrangian->states[i]);
            const double diff = (rec - eulerian->states[i]).sup_norm();
            cross << format_number(eulerian->times[i]) << ','
                  << format_number(diff) << '\n';
        }
        manifest.outputs.push_back("crosscheck.csv");
    }

    manifest.partial = partial;
    manifest.note = note;
    manifest.write(out);
    return partial ? exit_integration : exit_ok;
}

int cmd_verify_conservation(const CommonOptions& opt) {
    const json raw = load_config_file(opt.config_path);
    require_known_keys(
        raw, with_keys(solver_keys, {"initial_data", "tolerance", "dt_values"}),
        "verify-conservation config");
    const SolverConfig cfg = load_solver(raw, opt);
    const long long seed = config_integer_or(raw, "seed", 0);
    const double tolerance = config_number_or(raw, "tolerance", 1e-6);
    if (tolerance < 0.0) throw ConfigError("tolerance must be >= 0");
    const json data_spec =
        raw.contains("initial_data") ? raw["initial_data"] : json{{"kind", "zero"}};
    const GridFunction v0 = initial_data_from_json(data_spec, cfg, seed);

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);

    RunManifest manifest;
    manifest.config_echo = raw;
    manifest.seed = seed;

    FlowSequence seq = integrate_spray(v0, cfg.horizon, cfg);
    const ConservationReport report =
        conservation_residual(seq, v0, cfg.gamma, cfg.s);
    write_conservation_csv(out / "conservation.csv", report);
    manifest.outputs.push_back("conservation.csv");

    double max_abs_psi = 0.0;
    for (const FlowState& state : seq.states)
        max_abs_psi = std::max(max_abs_psi, state.psi.sup_norm());

    json summary;
    summary["status"] = to_string(seq.status);
    summary["max_residual_sup"] = report.max_residual_sup();
    summary["max_residual_s2"] = report.max_residual_s_minus_2();
    summary["max_abs_psi"] = max_abs_psi;
    summary["tolerance"] = tolerance;

    // Optional step-size sweep: residual at the final time per dt, with
    // the measured convergence order between consecutive entries.
    if (raw.contains("dt_values")) {
        if (!raw["dt_values"].is_array())
            throw ConfigError("dt_values must be an array of step sizes");
        json sweep = json::array();
        std::vector<double> dts, finals;
        for (const auto& item : raw["dt_values"]) {
            if (!item.is_number())
                throw ConfigError("dt_values entries must be numbers");
            SolverConfig swept = cfg;
            swept.dt = item.get<double>();
            FlowSequence run = integrate_spray(v0, cfg.horizon, swept, 0);
            if (!run.completed())
                throw ExpDomainError("dt sweep run terminated early: " +
                                         run.reason,
                                     run.terminated_at);
            const ConservationReport r =
                conservation_residual(run, v0, cfg.gamma, cfg.s);
            dts.push_back(*swept.dt);
            finals.push_back(r.residual_sup.back());
            sweep.push_back({{"dt", *swept.dt},
                             {"final_residual_sup", r.residual_sup.back()}});
        }
        json orders = json::array();
        for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
            const double order = std::log(finals[i] / finals[i + 1]) /
                                 std::log(dts[i] / dts[i + 1]);
            orders.push_back(order);
        }
        summary["dt_sweep"] = sweep;
        summary["measured_orders"] = orders;
    }

    const bool pass =
        seq.completed() && report.max_residual_sup() <= tolerance;
    summary["pass"] = pass;
    write_json(out / "summary.json", summary);
    manifest.outputs.push_back("summary.json");
    manifest.partial = !seq.completed();
    manifest.note = seq.reason;
    manifest.write(out);

    if (!seq.completed()) return exit_integration;
    return pass ? exit_ok : exit_verification;
}

int cmd_nonuniform(const CommonOptions& opt) {
    const json raw = load_config_file(opt.config_path);
    require_known_keys(raw, with_keys(solver_keys, {"initial_data", "experiment"}),
                       "nonuniform config");
    const SolverConfig cfg = load_solver(raw, opt);
    const long long seed = config_integer_or(raw, "seed", 0);
    if (!raw.contains("experiment"))
        throw ConfigError("nonuniform needs an 'experiment' table");
    const json& exp = raw["experiment"];
    require_known_keys(exp, {"g", "x0", "R", "n_values"}, "experiment table");
    if (!exp.contains("g"))
        throw ConfigError("experiment table needs probe direction 'g'");
    if (!exp.contains("n_values") || !exp["n_values"].is_array())
        throw ConfigError("experiment table needs an 'n_values' array");

    const json data_spec =
        raw.contains("initial_data") ? raw["initial_data"] : json{{"kind", "zero"}};

    ExperimentConfig ec{cfg, initial_data_from_json(data_spec, cfg, seed),
                        initial_data_from_json(exp["g"], cfg, seed),
                        config_number(exp, "x0"), config_number(exp, "R"),
                        {}};
    for (const auto& item : exp["n_values"]) {
        if (!item.is_number_integer())
            throw ConfigError("n_values entries must be integers");
        ec.n_values.push_back(item.get<int>());
    }
    try {
        ec.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid experiment: ") + e.what());
    } catch (const InvalidInputError& e) {
        throw ConfigError(std::string("invalid experiment: ") + e.what());
    }

    const ExperimentResult result =
        run_experiment(ec, resolve_threads(opt.threads));

    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);

    RunManifest manifest;
    manifest.config_echo = raw;
    manifest.seed = seed;

    write_experiment_csv(out / "experiment.csv", result.records);
    manifest.outputs.push_back("experiment.csv");

    json summary = experiment_summary_json(result.summary);
    json failures = json::array();
    for (const ExperimentRecord& rec : result.records)
        if (!rec.ok) failures.push_back({{"n", rec.n}, {"failure", rec.failure}});
    summary["failed_records"] = failures;
    write_json(out / "summary.json", summary);
    manifest.outputs.push_back("summary.json");
    manifest.partial = !failures.empty();
    manifest.write(out);

    if (!failures.empty()) return exit_integration;
    const ExperimentSummary& s = result.summary;
    const bool all_ok = s.construction_exact && s.separation_ok &&
                        s.supports_disjoint_all && s.witness_ok;
    return all_ok ? exit_ok : exit_verification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rodflow: a numerical laboratory for the hyperelastic rod "
                 "equation on the circle"};
    app.require_subcommand(1);

    CommonOptions sim_opt, verify_opt, nonuni_opt;
    CLI::App* sim = app.add_subcommand(
        "simulate", "integrate the equation in Eulerian and/or flow-map form");
    add_common(sim, sim_opt);
    CLI::App* verify = app.add_subcommand(
        "verify-conservation", "check the transport identity along a flow");
    add_common(verify, verify_opt);
    CLI::App* nonuni = app.add_subcommand(
        "nonuniform", "run the non-uniform-dependence experiment");
    add_common(nonuni, nonuni_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_opt);
        if (verify->parsed()) return cmd_verify_conservation(verify_opt);
        if (nonuni->parsed()) return cmd_nonuniform(nonuni_opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ResolutionError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const InvalidInputError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const DegenerateDirectionError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const Error& e) {
        std::cerr << "run failed: " << e.what() << '\n';
        return exit_integration;
    }
    return exit_config;
}
