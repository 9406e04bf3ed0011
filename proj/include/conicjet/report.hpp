#pragma once

// Run configuration, verdicts and the structured reports printed by the
// command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conicjet/conic.hpp"
#include "conicjet/gfp_linalg.hpp"
#include "conicjet/jet.hpp"
#include "conicjet/linear_system.hpp"

namespace conicjet {

std::string version();

struct RunConfig {
    std::string command = "verify";  // verify | thresholds | enumerate | tower | export-matrix
    std::string conics = "fermat";   // preset name or path to a JSON file
    unsigned m = 3;
    unsigned t = 3;
    std::uint64_t prime = 5;
    std::vector<Chart> charts{Chart::Z0, Chart::Z2};
    bool parallel = false;
    unsigned threads = 4;  // used when parallel
    bool full_substitution = false;
    bool integer_arithmetic = false;
    std::string export_matrix;  // SMS output path, empty for none
    std::string report;         // JSON report path, empty for none
    // thresholds
    std::vector<long> degrees{3, 2, 2};
    std::optional<unsigned> tau_m, tau_t;
    // enumerate
    std::string c = "5";
    unsigned m_max = 20;

    // Throws ConfigError on violated invariants.
    void validate() const;
};

// Keys: command, conics, m, t, prime, charts, parallel, threads,
// full_substitution, integer_arithmetic, export_matrix, report, degrees, c,
// m_max. Unknown keys are rejected.
RunConfig load_config(const std::string& path);
void apply_config(RunConfig& cfg, const nlohmann::json& j);

// "fermat", "case72" or a JSON file {"label": .., "a": [6], "b": [6], "c": [6]}
// whose entries are integers or rational strings.
ConicTriple load_conics(const std::string& source);
ConicTriple conics_from_json(const nlohmann::json& j);

struct VanishingVerdict {
    std::string conics;
    unsigned m = 0, t = 0;
    std::uint64_t prime = 5;
    std::vector<Chart> charts;
    std::string elimination = "shortcut";
    bool parallel = false;

    std::size_t n_vars = 0, n_rows_raw = 0, n_rows_dedup = 0;
    std::size_t rank = 0, nullity = 0;
    std::string verdict;  // vanishing-certified | nontrivial-nullspace | vacuous

    double assemble_seconds = 0, eliminate_seconds = 0, total_seconds = 0;
    double peak_rss_mb = 0;
    std::string checksum;

    int exit_code() const;
    nlohmann::json to_json() const;
};

struct VerifyOutcome {
    VanishingVerdict verdict;
    LinearSystem system;
};

// Assembles, eliminates, writes the requested files. Config and precondition
// failures surface as exceptions (exit code 2 in the tool).
VerifyOutcome run_verify(const RunConfig& cfg);

nlohmann::json thresholds_report(const std::vector<long>& degrees, std::optional<unsigned> m,
                                 std::optional<unsigned> t);
nlohmann::json enumerate_report(const std::string& c, unsigned m_max);
// The quartic table, the mixed rules, the closed-form check and the general
// Chern-class split check. "ok" is true iff every check passed.
nlohmann::json tower_report();

double peak_rss_mb();

}  // namespace conicjet
