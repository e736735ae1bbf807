#ifndef RODFLOW_CONFIG_HPP
#define RODFLOW_CONFIG_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "rodflow/eulerian.hpp"
#include "rodflow/grid_function.hpp"

namespace rodflow {

// Parses the flat TOML subset documented in the README: [table] headers,
// key = value lines with strings, booleans, numbers and one-line arrays,
// and # comments. Throws ConfigError with a line diagnostic.
nlohmann::json parse_toml_subset(const std::string& text);

// Loads a config file: *.json as JSON, everything else as the TOML
// subset. JSON is the canonical schema; both produce identical trees.
nlohmann::json load_config_file(const std::filesystem::path& path);

// Typed accessors that turn JSON type mismatches into ConfigError
// mentioning the key.
double config_number(const nlohmann::json& j, const std::string& key);
double config_number_or(const nlohmann::json& j, const std::string& key,
                        double fallback);
long long config_integer_or(const nlohmann::json& j, const std::string& key,
                            long long fallback);
bool config_bool_or(const nlohmann::json& j, const std::string& key,
                    bool fallback);
std::string config_string_or(const nlohmann::json& j, const std::string& key,
                             const std::string& fallback);

// Rejects keys outside `allowed` (ConfigError naming the offender).
void require_known_keys(const nlohmann::json& j,
                        const std::vector<std::string>& allowed,
                        const std::string& context);

// Solver fields: gamma, s, grid_size (alias N), domain_length, dt or
// cfl_factor, T, blowup_floor, norm_cap, dealias, snapshot_stride.
SolverConfig solver_config_from_json(const nlohmann::json& j);

// Initial-data spec: {"kind": "zero"|"constant"|"sine"|"bump"|
// "random_fourier", ...}. The seed feeds random_fourier.
GridFunction initial_data_from_json(const nlohmann::json& spec,
                                    const SolverConfig& cfg, long long seed);

} // namespace rodflow

#endif
