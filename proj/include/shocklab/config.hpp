#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace shocklab {

// Flat key = value configuration, one section per subcommand, no nesting.
// Unknown keys are rejected by name; parse errors carry line/column.
struct RunConfig {
    std::string subcommand;                       // e.g. "john.solve"
    std::map<std::string, std::string> kv;        // raw, key-sorted
    uint64_t seed = 0;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    std::string get_string(const std::string& key, const std::string& dflt) const;
    double get_double(const std::string& key, double dflt) const;
    long get_long(const std::string& key, long dflt) const;
    std::vector<double> get_list(const std::string& key) const;

    // Canonical text form; parse_config(serialize(c), c.subcommand) == c.
    std::string serialize() const;
};

// Known keys per subcommand (shared keys included). Throws ConfigError with
// "UnknownKey: ..." naming the offender, or with line/column on bad syntax.
RunConfig parse_config(const std::string& text, const std::string& subcommand);

// Merge a single key=value override (CLI flag) into cfg, validating the key.
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

}  // namespace shocklab
