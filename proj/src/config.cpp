#include "shocklab/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "shocklab/common.hpp"

namespace shocklab {

namespace {

const std::set<std::string> COMMON_KEYS = {"seed", "out_csv", "out_json"};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"burgers", {"profile", "t_max", "n_alpha", "n_t", "alpha_min", "alpha_max"}},
        {"john.solve",
         {"psi0", "psi0_dot", "support_radius", "amplitude", "start_time", "U0", "n_u",
          "kappa", "dt_max", "t_max", "s_max", "mu_stop", "history_stride", "order_check",
          "order_s"}},
        {"john.predict",
         {"psi0", "psi0_dot", "support_radius", "amplitude", "start_time", "U0", "n_u"}},
        {"john.sweep",
         {"psi0", "psi0_dot", "support_radius", "start_time", "U0", "n_u", "kappa", "dt_max",
          "t_max", "s_max", "mu_stop", "history_stride", "lambda"}},
        {"nullcond.check", {"tensors", "n_dirs"}},
        {"nullcond.aleph", {"metric", "n_dirs", "theta_grid"}},
        {"nullcond.fluid", {"lagrangian", "k", "tol"}},
        {"lifespan",
         {"phi0", "phi0_dot", "aleph", "lambda", "q_points", "sphere_points", "n_trials",
          "chris_lagrangian", "chris_k", "chris_U"}},
    };
    return s;
}

void check_key(const std::string& subcommand, const std::string& key, int line) {
    auto it = schema().find(subcommand);
    if (it == schema().end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
    if (COMMON_KEYS.count(key) || it->second.count(key)) return;
    std::string where = line > 0 ? " (line " + std::to_string(line) + ")" : "";
    throw ConfigError("UnknownKey: '" + key + "' is not a key of " + subcommand + where);
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

}  // namespace

std::string RunConfig::get_string(const std::string& key, const std::string& dflt) const {
    auto it = kv.find(key);
    return it == kv.end() ? dflt : it->second;
}

double RunConfig::get_double(const std::string& key, double dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError("TypeError: key '" + key + "' expects a number, got '" + it->second +
                          "'");
    return v;
}

long RunConfig::get_long(const std::string& key, long dflt) const {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    char* end = nullptr;
    long v = std::strtol(it->second.c_str(), &end, 10);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError("TypeError: key '" + key + "' expects an integer, got '" + it->second +
                          "'");
    return v;
}

std::vector<double> RunConfig::get_list(const std::string& key) const {
    std::vector<double> out;
    auto it = kv.find(key);
    if (it == kv.end()) return out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0')
            throw ConfigError("TypeError: key '" + key + "' expects numbers, got '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

std::string RunConfig::serialize() const {
    std::string out = "# shocklab config: " + subcommand + "\n";
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

RunConfig parse_config(const std::string& text, const std::string& subcommand) {
    if (!schema().count(subcommand))
        throw ConfigError("unknown subcommand '" + subcommand + "'");
    RunConfig cfg;
    cfg.subcommand = subcommand;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("ParseError at line " + std::to_string(lineno) + ", column " +
                              std::to_string(t.size() + 1) + ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("ParseError at line " + std::to_string(lineno) +
                              ", column 1: empty key");
        check_key(subcommand, key, lineno);
        cfg.kv[key] = value;
    }
    cfg.seed = (uint64_t)cfg.get_long("seed", 0);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    check_key(cfg.subcommand, key, 0);
    cfg.kv[key] = value;
    if (key == "seed") cfg.seed = (uint64_t)cfg.get_long("seed", 0);
}

}  // namespace shocklab
