#ifndef RODFLOW_IO_HPP
#define RODFLOW_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rodflow/conservation.hpp"
#include "rodflow/eulerian.hpp"
#include "rodflow/grid_function.hpp"
#include "rodflow/lagrangian.hpp"
#include "rodflow/nonuniform.hpp"

namespace rodflow {

// All numbers are written with 15 significant digits ("%.15g"), which
// keeps repeated runs byte-identical.
std::string format_number(double v);

void write_grid_csv(const std::filesystem::path& path, const GridFunction& f);
void write_grid_json(const std::filesystem::path& path, const GridFunction& f);
GridFunction read_grid_json(const std::filesystem::path& path);

void write_flow_snapshot_csv(const std::filesystem::path& path,
                             const FlowState& state);

void write_conservation_csv(const std::filesystem::path& path,
                            const ConservationReport& report);

void write_experiment_csv(const std::filesystem::path& path,
                          const std::vector<ExperimentRecord>& records);

nlohmann::json trajectory_manifest(const Trajectory& traj,
                                   const nlohmann::json& config_echo,
                                   const std::vector<std::string>& snapshots);
nlohmann::json flow_manifest(const FlowSequence& seq,
                             const nlohmann::json& config_echo,
                             const std::vector<std::string>& snapshots);
nlohmann::json experiment_summary_json(const ExperimentSummary& summary);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

// Run-level output inventory; written after every listed file exists.
struct RunManifest {
    nlohmann::json config_echo;
    std::vector<std::string> outputs; // paths relative to the output dir
    long long seed = 0;
    bool partial = false;             // true when a run terminated early
    std::string note;

    void write(const std::filesystem::path& out_dir) const;
};

} // namespace rodflow

#endif
