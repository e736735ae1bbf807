#include "rodflow/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "rodflow/spectral.hpp"

namespace rodflow {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Removes an inline comment starting at an unquoted '#'.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

nlohmann::json parse_scalar(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (v.empty())
        throw ConfigError("config line " + std::to_string(line) + ": empty value");
    if (v.front() == '"') {
        if (v.size() < 2 || v.back() != '"')
            throw ConfigError("config line " + std::to_string(line) +
                              ": unterminated string");
        std::string out;
        for (std::size_t i = 1; i + 1 < v.size(); ++i) {
            if (v[i] == '\\' && i + 2 < v.size()) {
                ++i;
                out.push_back(v[i]);
            } else {
                out.push_back(v[i]);
            }
        }
        return out;
    }
    if (v == "true") return true;
    if (v == "false") return false;
    // Integer?
    bool integral = !v.empty();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == 0 && (v[i] == '+' || v[i] == '-')) continue;
        if (!std::isdigit(static_cast<unsigned char>(v[i]))) integral = false;
    }
    if (integral && v != "+" && v != "-") {
        try {
            return static_cast<long long>(std::stoll(v));
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(line) +
                              ": integer out of range: " + v);
        }
    }
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0' || !std::isfinite(d))
        throw ConfigError("config line " + std::to_string(line) +
                          ": cannot parse value: " + v);
    return d;
}

nlohmann::json parse_value(const std::string& raw, int line) {
    const std::string v = trim(raw);
    if (!v.empty() && v.front() == '[') {
        if (v.back() != ']')
            throw ConfigError("config line " + std::to_string(line) +
                              ": unterminated array");
        nlohmann::json arr = nlohmann::json::array();
        std::string body = v.substr(1, v.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty()) continue;
            arr.push_back(parse_scalar(item, line));
        }
        return arr;
    }
    return parse_scalar(v, line);
}

} // namespace

nlohmann::json parse_toml_subset(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* current = &root;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed table header");
            const std::string name = trim(body.substr(1, body.size() - 2));
            if (name.empty())
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": empty table name");
            current = &root;
            std::stringstream parts(name);
            std::string part;
            while (std::getline(parts, part, '.')) {
                part = trim(part);
                if (part.empty())
                    throw ConfigError("config line " + std::to_string(lineno) +
                                      ": malformed table name");
                current = &(*current)[part];
            }
            continue;
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        (*current)[key] = parse_value(body.substr(eq + 1), lineno);
    }
    return root;
}

nlohmann::json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (path.extension() == ".json") {
        try {
            return nlohmann::json::parse(buffer.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("JSON parse error: ") + e.what());
        }
    }
    return parse_toml_subset(buffer.str());
}

double config_number(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("missing config key '" + key + "'");
    if (!j[key].is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

double config_number_or(const nlohmann::json& j, const std::string& key,
                        double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

long long config_integer_or(const nlohmann::json& j, const std::string& key,
                            long long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw ConfigError("config key '" + key + "' must be an integer");
    return j[key].get<long long>();
}

bool config_bool_or(const nlohmann::json& j, const std::string& key,
                    bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean())
        throw ConfigError("config key '" + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::string config_string_or(const nlohmann::json& j, const std::string& key,
                             const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw ConfigError("config key '" + key + "' must be a string");
    return j[key].get<std::string>();
}

void require_known_keys(const nlohmann::json& j,
                        const std::vector<std::string>& allowed,
                        const std::string& context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const std::string& k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            throw ConfigError("unknown config key '" + it.key() + "' in " +
                              context);
    }
}

SolverConfig solver_config_from_json(const nlohmann::json& j) {
    SolverConfig cfg;
    cfg.gamma = config_number_or(j, "gamma", cfg.gamma);
    cfg.s = config_number_or(j, "s", cfg.s);
    long long n = config_integer_or(j, "grid_size", -1);
    if (n < 0) n = config_integer_or(j, "N", static_cast<long long>(cfg.grid_size));
    if (n <= 0) throw ConfigError("grid_size must be positive");
    cfg.grid_size = static_cast<std::size_t>(n);
    cfg.domain_length = config_number_or(j, "domain_length", cfg.domain_length);
    if (j.contains("dt")) cfg.dt = config_number(j, "dt");
    cfg.cfl_factor = config_number_or(j, "cfl_factor", cfg.cfl_factor);
    cfg.horizon = config_number_or(j, "T", cfg.horizon);
    cfg.blowup_floor = config_number_or(j, "blowup_floor", cfg.blowup_floor);
    cfg.norm_cap = config_number_or(j, "norm_cap", cfg.norm_cap);
    cfg.dealias = config_bool_or(j, "dealias", cfg.dealias);
    cfg.snapshot_stride = static_cast<std::size_t>(config_integer_or(
        j, "snapshot_stride", static_cast<long long>(cfg.snapshot_stride)));
    try {
        cfg.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(std::string("invalid solver configuration: ") +
                          e.what());
    }
    return cfg;
}

GridFunction initial_data_from_json(const nlohmann::json& spec,
                                    const SolverConfig& cfg, long long seed) {
    if (!spec.is_object() || !spec.contains("kind"))
        throw ConfigError("initial data spec needs a 'kind' field");
    const std::string kind = spec["kind"].get<std::string>();
    const std::size_t n = cfg.grid_size;
    const double L = cfg.domain_length;

    if (kind == "zero") {
        require_known_keys(spec, {"kind"}, "initial data 'zero'");
        return GridFunction::zeros(n, L);
    }
    if (kind == "constant") {
        require_known_keys(spec, {"kind", "value"}, "initial data 'constant'");
        return GridFunction::constant(n, L, config_number(spec, "value"));
    }
    if (kind == "sine") {
        require_known_keys(spec, {"kind", "amplitude", "wavenumber", "phase"},
                           "initial data 'sine'");
        const double a = config_number_or(spec, "amplitude", 1.0);
        const double k = config_number_or(spec, "wavenumber", 1.0);
        const double phase = config_number_or(spec, "phase", 0.0);
        return GridFunction::sample(n, L, [&](double x) {
            return a * std::sin(2.0 * M_PI * k * x / L + phase);
        });
    }
    if (kind == "bump") {
        require_known_keys(spec,
                           {"kind", "center", "halfwidth", "target_norm", "s"},
                           "initial data 'bump'");
        const double center = config_number(spec, "center");
        const double halfwidth = config_number(spec, "halfwidth");
        const double target = config_number(spec, "target_norm");
        const double s = config_number_or(spec, "s", cfg.s);
        return bump(center, halfwidth, s, target, n, L);
    }
    if (kind == "random_fourier") {
        require_known_keys(spec, {"kind", "modes", "decay", "amplitude", "seed"},
                           "initial data 'random_fourier'");
        const long long modes = config_integer_or(spec, "modes", 8);
        const double decay = config_number_or(spec, "decay", 0.5);
        const double amplitude = config_number_or(spec, "amplitude", 0.1);
        const long long local_seed = config_integer_or(spec, "seed", seed);
        if (modes < 1 || static_cast<std::size_t>(modes) >= n / 2)
            throw ConfigError("random_fourier modes must lie in [1, n/2)");
        std::mt19937_64 rng(static_cast<std::uint64_t>(local_seed));
        // Raw engine draws mapped to [-1, 1): identical on every platform.
        auto draw = [&rng]() {
            return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
        };
        std::vector<double> a(static_cast<std::size_t>(modes)),
            b(static_cast<std::size_t>(modes));
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = draw();
            b[k] = draw();
        }
        return GridFunction::sample(n, L, [&](double x) {
            double value = 0.0;
            double weight = amplitude;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double arg =
                    2.0 * M_PI * static_cast<double>(k + 1) * x / L;
                value += weight * (a[k] * std::cos(arg) + b[k] * std::sin(arg));
                weight *= decay;
            }
            return value;
        });
    }
    throw ConfigError("unknown initial data kind '" + kind + "'");
}

} // namespace rodflow
