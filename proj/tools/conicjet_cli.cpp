// conicjet: certify vanishing of invariant log 2-jet differentials for
// three-conic configurations, and print the threshold, enumeration and
// tower-ring tables.
//
// Exit codes: 0 certified (or report printed), 1 nontrivial nullspace,
// 2 configuration or precondition error, 3 vacuous system.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conicjet/report.hpp"
#include "conicjet/thresholds.hpp"

using namespace conicjet;
using nlohmann::json;

namespace {

std::vector<Chart> parse_charts(const std::string& text) {
    std::vector<Chart> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_chart(item));
    return out;
}

std::vector<long> parse_degrees(const std::string& text) {
    std::vector<long> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stol(item));
        } catch (const std::exception&) {
            throw ConfigError("bad degree '" + item + "'");
        }
    }
    return out;
}

int print_verify(const RunConfig& cfg, bool json_out) {
    VerifyOutcome out = run_verify(cfg);
    const VanishingVerdict& v = out.verdict;
    if (json_out) {
        std::cout << v.to_json().dump(2) << '\n';
    } else {
        std::cout << "conics " << v.conics << "  m=" << v.m << " t=" << v.t << " p=" << v.prime << '\n';
        std::cout << "unknowns " << v.n_vars << ", rows " << v.n_rows_dedup << " (" << v.n_rows_raw
                  << " before deduplication)\n";
        std::cout << "rank " << v.rank << ", nullity " << v.nullity << '\n';
        std::cout << "verdict " << v.verdict << '\n';
        std::cout << "time " << v.total_seconds << " s, peak memory " << v.peak_rss_mb << " MB\n";
        std::cout << "checksum sha256:" << v.checksum << '\n';
    }
    return v.exit_code();
}

int print_thresholds(const RunConfig& cfg, bool json_out) {
    json r = thresholds_report(cfg.degrees, cfg.tau_m, cfg.tau_t);
    if (json_out) {
        std::cout << r.dump(2) << '\n';
        return 0;
    }
    std::cout << "degrees " << r["degrees"].dump() << ", d = " << r["d"] << '\n';
    if (r.contains("delta1"))
        std::cout << "delta1 = " << r["delta1"]["exact"].get<std::string>() << " ~ "
                  << r["delta1"]["decimal"].get<std::string>() << '\n';
    else
        std::cout << "delta1 undefined (negative radicand " << r["radicand"].get<std::string>() << ")\n";
    if (r.contains("threshold_constant"))
        std::cout << "1/((d-3) delta1) = " << r["threshold_constant"]["exact"].get<std::string>() << " ~ "
                  << r["threshold_constant"]["decimal"].get<std::string>() << '\n';
    if (!r["hypothesis_ok"].get<bool>()) std::cout << "warning: the degree hypothesis d1 >= 3, d3 >= 2 fails\n";
    std::cout << "two-jet roots " << r["two_jet"]["roots"][0]["exact"].get<std::string>() << ", "
              << r["two_jet"]["roots"][1]["exact"].get<std::string>() << '\n';
    std::cout << "3/(4 - sqrt(10)) ~ " << r["two_jet"]["threshold_constant"]["decimal"].get<std::string>() << '\n';
    if (r.contains("tau"))
        std::cout << "tau1 = " << r["tau"]["tau1"]["exact"].get<std::string>() << ", tau2 = "
                  << r["tau"]["tau2"]["exact"].get<std::string>() << '\n';
    return 0;
}

int print_enumerate(const RunConfig& cfg, bool json_out) {
    json r = enumerate_report(cfg.c, cfg.m_max);
    if (json_out) {
        std::cout << r.dump(2) << '\n';
        return 0;
    }
    std::cout << "c = " << r["c"].get<std::string>() << ", g(c) = " << r["g"].get<std::string>() << '\n';
    for (const auto& p : r["pairs"]) std::cout << "(" << p[0] << ", " << p[1] << ")\n";
    return 0;
}

int print_tower(bool json_out) {
    json r = tower_report();
    if (json_out) {
        std::cout << r.dump(2) << '\n';
    } else {
        for (const auto& q : r["quartic"])
            std::cout << q["monomial"].get<std::string>() << " = " << q["value"].get<std::string>() << "   ("
                      << q["general"].get<std::string>() << ")\n";
        for (const auto& q : r["mixed_rules"])
            std::cout << q["monomial"].get<std::string>() << " = " << q["general"].get<std::string>() << '\n';
        std::cout << "z-cube closed form: " << r["z_cube"]["cases"] << " cases, " << r["z_cube"]["failures"]
                  << " failures\n";
        std::cout << "split defect for general Chern classes: " << r["split_defect_general"].get<std::string>()
                  << '\n';
    }
    return r["ok"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verifier for invariant log 2-jet differentials on three-conic configurations"};
    app.require_subcommand(0, 1);
    std::string config_path;
    bool json_out = false;
    app.add_option("--config", config_path, "JSON config file with the same keys as the options");
    app.add_flag("--json", json_out, "Print JSON instead of text");

    std::string conics, charts_text, degrees_text, c_text;
    unsigned m = 0, t = 0, m_max = 0, threads = 0;
    std::uint64_t prime = 0;
    std::string export_path, report_path;
    bool parallel = false, full = false, integer = false, check = false;

    auto add_verify_options = [&](CLI::App* sub) {
        sub->add_option("--conics", conics, "Preset (fermat, case72) or JSON file");
        sub->add_option("--m", m, "Weighted degree m");
        sub->add_option("--t", t, "Twist t");
        sub->add_option("--prime", prime, "Prime p");
        sub->add_option("--charts", charts_text, "Comma-separated charts, e.g. Z0,Z2");
        sub->add_option("--report", report_path, "Write the JSON report here");
        sub->add_flag("--parallel", parallel, "Parallel expansion and elimination");
        sub->add_option("--threads", threads, "Worker threads with --parallel");
        sub->add_flag("--full-substitution", full, "Eliminate second derivatives by full substitution");
        sub->add_flag("--integer", integer, "Expand over the integers, reduce mod p at the end");
    };
    CLI::App* verify = app.add_subcommand("verify", "Assemble and eliminate the vanishing system");
    add_verify_options(verify);
    verify->add_option("--export-matrix", export_path, "Write the matrix in SMS format");
    CLI::App* exporter = app.add_subcommand("export-matrix", "verify, writing the matrix in SMS format");
    add_verify_options(exporter);
    exporter->add_option("--out,--export-matrix", export_path, "SMS output path")->required();

    CLI::App* thresholds = app.add_subcommand("thresholds", "delta_1, two-jet roots, tau roots");
    thresholds->add_option("--degrees", degrees_text, "d1,d2,d3");
    thresholds->add_option("--m", m, "m for the tau roots");
    thresholds->add_option("--t", t, "t for the tau roots");

    CLI::App* enumerate = app.add_subcommand("enumerate", "Minimal exceptional (m, t) pairs");
    enumerate->add_option("--c", c_text, "Rational constant c");
    enumerate->add_option("--m-max", m_max, "Largest m");

    CLI::App* tower = app.add_subcommand("tower", "Tower-ring tables and checks");
    tower->add_flag("--check", check, "Exit nonzero if a check fails (always on)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (auto subs = app.get_subcommands(); !subs.empty()) cfg.command = subs.front()->get_name();
        CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front();
        auto given = [&](const char* name) {
            const CLI::Option* opt = sub ? sub->get_option_no_throw(name) : nullptr;
            return opt && opt->count() > 0;
        };
        if (given("--conics")) cfg.conics = conics;
        if (given("--m")) cfg.m = m;
        if (given("--t")) cfg.t = t;
        if (given("--prime")) cfg.prime = prime;
        if (given("--charts")) cfg.charts = parse_charts(charts_text);
        if (given("--report")) cfg.report = report_path;
        if (given("--parallel")) cfg.parallel = parallel;
        if (given("--threads")) cfg.threads = threads;
        if (given("--full-substitution")) cfg.full_substitution = full;
        if (given("--integer")) cfg.integer_arithmetic = integer;
        if (given("--export-matrix") || given("--out")) cfg.export_matrix = export_path;
        if (given("--degrees")) cfg.degrees = parse_degrees(degrees_text);
        if (given("--c")) cfg.c = c_text;
        if (given("--m-max")) cfg.m_max = m_max;
        if (cfg.command == "thresholds" && given("--m") && given("--t")) {
            cfg.tau_m = m;
            cfg.tau_t = t;
        }
        if (!sub && config_path.empty()) {
            std::cout << app.help();
            return 2;
        }
        cfg.validate();

        if (cfg.command == "verify" || cfg.command == "export-matrix") return print_verify(cfg, json_out);
        if (cfg.command == "thresholds") return print_thresholds(cfg, json_out);
        if (cfg.command == "enumerate") return print_enumerate(cfg, json_out);
        return print_tower(json_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
