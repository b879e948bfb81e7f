#pragma once

#include <string>

#include "json.hpp"
#include "shocklab/config.hpp"

namespace shocklab {

// Dispatch a parsed config to the owning module and return the run summary.
// The summary is a key-sorted JSON document; identical config + seed produce
// byte-identical output (wall time goes to stderr, never into the document).
nlohmann::json run_experiment(const RunConfig& cfg);

// Independent solves over the lambda list (>= 2 values), merged keyed by
// lambda, with the fitted lambda*ln T table and its relative spread appended.
// SHOCKLAB_THREADS caps the concurrency; per-run errors are collected and the
// sweep fails only if every run fails.
nlohmann::json sweep(const RunConfig& cfg);

std::string summary_to_string(const nlohmann::json& summary);

}  // namespace shocklab
