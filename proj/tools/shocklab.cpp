// shocklab — command-line front end.
//
//   shocklab burgers  [--config f] [--profile spec] [--t-max v] [--n-alpha n] [--out csv]
//   shocklab john     solve|predict|sweep   [--config f] [--key value ...]
//   shocklab nullcond check|aleph|fluid     [--config f] [--key value ...]
//   shocklab lifespan [--config f] [--key value ...]
//
// Any config key can be overridden on the command line as --key value
// (dashes in flag names map to underscores). Exit codes: 0 ok, 2 config,
// 3 numerical, 4 quadrature.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "shocklab/common.hpp"
#include "shocklab/config.hpp"
#include "shocklab/runner.hpp"

namespace {

void usage() {
    std::cerr << "usage: shocklab <burgers|john|nullcond|lifespan> [sub] [--config file] "
                 "[--key value ...]\n"
              << "  john:     solve | predict | sweep\n"
              << "  nullcond: check | aleph | fluid\n";
}

std::string flag_to_key(const std::string& flag) {
    std::string key = flag.substr(2);
    for (char& c : key)
        if (c == '-') c = '_';
    return key;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace shocklab;
    try {
        if (argc < 2) {
            usage();
            return 2;
        }
        std::string subcommand = argv[1];
        int argi = 2;
        if (subcommand == "john" || subcommand == "nullcond") {
            if (argc < 3) {
                usage();
                return 2;
            }
            subcommand += std::string(".") + argv[2];
            argi = 3;
        }

        std::string config_text;
        std::vector<std::pair<std::string, std::string>> overrides;
        std::string out_flag;
        for (int i = argi; i < argc; ++i) {
            std::string a = argv[i];
            if (a.rfind("--", 0) != 0) throw ConfigError("unexpected argument '" + a + "'");
            if (i + 1 >= argc) throw ConfigError("flag '" + a + "' needs a value");
            std::string value = argv[++i];
            if (a == "--config") {
                std::ifstream in(value);
                if (!in) throw ConfigError("cannot open config file '" + value + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                config_text = ss.str();
            } else if (a == "--out") {
                out_flag = value;
            } else {
                overrides.emplace_back(flag_to_key(a), value);
            }
        }

        RunConfig cfg = parse_config(config_text, subcommand);
        for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
        if (!out_flag.empty()) {
            // --out means the CSV table for burgers/aleph, the JSON summary elsewhere
            if (subcommand == "burgers" || subcommand == "nullcond.aleph")
                apply_override(cfg, "out_csv", out_flag);
            else
                apply_override(cfg, "out_json", out_flag);
        }

        auto t0 = std::chrono::steady_clock::now();
        nlohmann::json summary = run_experiment(cfg);
        auto t1 = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

        std::string text = summary_to_string(summary);
        if (cfg.has("out_json")) {
            std::ofstream out(cfg.get_string("out_json", ""), std::ios::binary);
            if (!out) throw ConfigError("cannot open output file");
            out << text;
        } else {
            std::cout << text;
        }
        std::cerr << "wall_time_ms " << ms << "\n";  // never part of the summary document

        // NoShock is a success outcome, reported as such
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
