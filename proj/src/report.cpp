#include "conicjet/report.hpp"

#include <chrono>
#include <fstream>
#include <set>

#include <sys/resource.h>

#include "conicjet/thresholds.hpp"
#include "conicjet/tower.hpp"

#ifndef CONICJET_VERSION
#define CONICJET_VERSION "0.0.0"
#endif

namespace conicjet {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

mpq_class json_rational(const json& v) {
    if (v.is_number_integer()) return mpq_class(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw ConfigError("conic coefficients must be integers or rational strings");
}

json quad_json(const QuadSurd& q) {
    return {{"exact", q.to_string()},
            {"rational", q.rational_part().get_str()},
            {"surd_coefficient", q.surd_coefficient().get_str()},
            {"radicand", q.radicand().get_str()},
            {"decimal", q.decimal(30)}};
}

std::vector<std::string> chart_names(const std::vector<Chart>& charts) {
    std::vector<std::string> out;
    for (Chart c : charts) out.push_back(chart_name(c));
    return out;
}

}  // namespace

std::string version() { return CONICJET_VERSION; }

double peak_rss_mb() {
    struct rusage usage {};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<double>(usage.ru_maxrss) / 1024.0;
}

void RunConfig::validate() const {
    static const std::set<std::string> commands = {"verify", "thresholds", "enumerate", "tower", "export-matrix"};
    if (!commands.count(command)) throw ConfigError("unknown command '" + command + "'");
    if (prime < 2 || prime >= PrimeField::kMaxPrime || !is_prime(prime))
        throw ConfigError("--prime must be a prime below 2^61, got " + std::to_string(prime));
    if ((command == "verify" || command == "export-matrix")) {
        if (charts.empty()) throw ConfigError("at least one chart is required");
        if (m == 0) throw ConfigError("m must be at least 1");
        if (command == "export-matrix" && export_matrix.empty())
            throw ConfigError("export-matrix needs an output path");
    }
    if (command == "thresholds" && degrees.size() != 3) throw ConfigError("--degrees takes three integers");
    if (parallel && threads == 0) throw ConfigError("threads must be positive");
}

void apply_config(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        try {
            if (key == "command") cfg.command = v.get<std::string>();
            else if (key == "conics") cfg.conics = v.get<std::string>();
            else if (key == "m") cfg.m = v.get<unsigned>();
            else if (key == "t") cfg.t = v.get<unsigned>();
            else if (key == "prime") cfg.prime = v.get<std::uint64_t>();
            else if (key == "charts") {
                cfg.charts.clear();
                for (const auto& c : v) cfg.charts.push_back(parse_chart(c.get<std::string>()));
            } else if (key == "parallel") cfg.parallel = v.get<bool>();
            else if (key == "threads") cfg.threads = v.get<unsigned>();
            else if (key == "full_substitution") cfg.full_substitution = v.get<bool>();
            else if (key == "integer_arithmetic") cfg.integer_arithmetic = v.get<bool>();
            else if (key == "export_matrix") cfg.export_matrix = v.get<std::string>();
            else if (key == "report") cfg.report = v.get<std::string>();
            else if (key == "degrees") cfg.degrees = v.get<std::vector<long>>();
            else if (key == "c") cfg.c = v.is_string() ? v.get<std::string>() : v.dump();
            else if (key == "m_max") cfg.m_max = v.get<unsigned>();
            else throw ConfigError("unknown config key '" + key + "'");
        } catch (const json::exception& e) {
            throw ConfigError("bad value for config key '" + key + "': " + e.what());
        }
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    RunConfig cfg;
    apply_config(cfg, j);
    return cfg;
}

ConicTriple conics_from_json(const json& j) {
    ConicTriple t;
    t.label = j.value("label", std::string("custom"));
    Conic* slots[] = {&t.a, &t.b, &t.c};
    const char* keys[] = {"a", "b", "c"};
    for (int i = 0; i < 3; ++i) {
        if (!j.contains(keys[i]) || !j[keys[i]].is_array() || j[keys[i]].size() != 6)
            throw ConfigError(std::string("conic '") + keys[i] + "' must be an array of six coefficients");
        std::array<mpq_class, 6> values;
        for (std::size_t k = 0; k < 6; ++k) values[k] = json_rational(j[keys[i]][k]);
        *slots[i] = Conic::from_rationals(values);
    }
    return t;
}

ConicTriple load_conics(const std::string& source) {
    if (source == "fermat" || source == "case72") return preset_triple(source);
    std::ifstream in(source);
    if (!in) throw ConfigError("'" + source + "' is neither a conic preset nor a readable file");
    try {
        return conics_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("conic file '" + source + "' is not valid JSON: " + e.what());
    }
}

int VanishingVerdict::exit_code() const {
    if (verdict == "vanishing-certified") return 0;
    if (verdict == "nontrivial-nullspace") return 1;
    if (verdict == "vacuous") return 3;
    return 2;
}

json VanishingVerdict::to_json() const {
    return {
        {"params",
         {{"conics", conics},
          {"m", m},
          {"t", t},
          {"prime", prime},
          {"charts", chart_names(charts)},
          {"elimination", elimination},
          {"parallel", parallel}}},
        {"counts", {{"n_vars", n_vars}, {"n_rows_raw", n_rows_raw}, {"n_rows_dedup", n_rows_dedup}}},
        {"result", {{"rank", rank}, {"nullity", nullity}, {"verdict", verdict}}},
        {"timings",
         {{"assemble_seconds", assemble_seconds},
          {"eliminate_seconds", eliminate_seconds},
          {"total_seconds", total_seconds},
          {"peak_rss_mb", peak_rss_mb}}},
        {"checksum", "sha256:" + checksum},
        {"version", version()},
    };
}

VerifyOutcome run_verify(const RunConfig& cfg) {
    cfg.validate();
    const auto start = Clock::now();
    const ConicTriple triple = load_conics(cfg.conics);
    auto issues = triple.validation_issues();
    if (!issues.empty()) throw ConfigError("invalid conic triple: " + issues.front());

    VanishingVerdict v;
    v.conics = triple.label;
    v.m = cfg.m;
    v.t = cfg.t;
    v.prime = cfg.prime;
    v.charts = cfg.charts;
    std::sort(v.charts.begin(), v.charts.end());
    v.charts.erase(std::unique(v.charts.begin(), v.charts.end()), v.charts.end());
    v.elimination = cfg.full_substitution ? "full" : "shortcut";
    v.parallel = cfg.parallel;

    AssembleOptions ao;
    ao.threads = cfg.parallel ? cfg.threads : 1;
    ao.expansion.elimination = cfg.full_substitution ? Elimination::Full : Elimination::Shortcut;
    ao.expansion.integer_arithmetic = cfg.integer_arithmetic;
    LinearSystem sys = assemble(triple, cfg.m, cfg.t, cfg.prime, cfg.charts, ao);
    v.assemble_seconds = seconds_since(start);
    v.n_vars = sys.n_vars;
    v.n_rows_raw = sys.n_rows_raw;
    v.n_rows_dedup = sys.rows.size();

    const auto elim_start = Clock::now();
    EliminationOptions eo;
    eo.threads = ao.threads;
    EliminationResult res = rank_nullity(sys, eo);
    v.eliminate_seconds = seconds_since(elim_start);
    v.rank = res.rank;
    v.nullity = res.nullity;
    if (sys.n_vars == 0)
        v.verdict = "vacuous";
    else
        v.verdict = res.nullity == 0 ? "vanishing-certified" : "nontrivial-nullspace";

    v.checksum = checksum(sys);
    if (!cfg.export_matrix.empty()) export_sms_file(sys, cfg.export_matrix);
    v.total_seconds = seconds_since(start);
    v.peak_rss_mb = peak_rss_mb();
    if (!cfg.report.empty()) {
        std::ofstream out(cfg.report);
        if (!out) throw IoFailure("cannot open report '" + cfg.report + "' for writing");
        out << v.to_json().dump(2) << '\n';
        if (!out) throw IoFailure("failed writing report '" + cfg.report + "'");
    }
    return {std::move(v), std::move(sys)};
}

json thresholds_report(const std::vector<long>& degrees, std::optional<unsigned> m, std::optional<unsigned> t) {
    if (degrees.size() != 3) throw ConfigError("three curve degrees are required");
    DegreeTriple dt(degrees[0], degrees[1], degrees[2]);
    Delta1Report d = delta1(dt);
    json out;
    out["degrees"] = {dt.d1, dt.d2, dt.d3};
    out["d"] = dt.d();
    out["radicand"] = d.radicand.get_str();
    out["negative_radicand"] = d.negative_radicand;
    out["hypothesis_ok"] = d.hypothesis_ok;
    if (d.delta1) out["delta1"] = quad_json(*d.delta1);
    if (d.constant) out["threshold_constant"] = quad_json(*d.constant);
    if (d.phi_at_delta1) out["phi_at_delta1"] = d.phi_at_delta1->to_string();

    auto [r1, r2] = two_jet_roots();
    json two;
    two["roots"] = {quad_json(r1), quad_json(r2)};
    two["three_delta1"] = quad_json(QuadSurd(mpq_class(3)) * r1);
    two["threshold_constant"] = quad_json(QuadSurd(mpq_class(3)) / (QuadSurd(mpq_class(9)) * r1));
    out["two_jet"] = two;

    if (m && t) {
        auto [t1, t2] = tau_roots(mpq_class(*m), mpq_class(*t));
        out["tau"] = {{"m", *m}, {"t", *t}, {"tau1", quad_json(t1)}, {"tau2", quad_json(t2)}};
    }
    out["tau1_limit"] = quad_json(tau1_limit());
    return out;
}

json enumerate_report(const std::string& c_text, unsigned m_max) {
    const mpq_class c = parse_rational(c_text);
    json out;
    out["c"] = c.get_str();
    out["g"] = region_constant(c).get_str();
    json pairs = json::array();
    for (const auto& p : exceptional_pairs(c, m_max)) pairs.push_back({p.m, p.t});
    out["m_max"] = m_max;
    out["pairs"] = pairs;
    return out;
}

json tower_report() {
    const TowerRing num = TowerRing::three_conics();
    const TowerRing sym = TowerRing::symbolic();
    const RatPoly g = RatPoly::variable(Rationals{}, towervar::arity, towervar::gamma);
    const RatPoly b = RatPoly::variable(Rationals{}, towervar::arity, towervar::beta);
    const RatPoly one = RatPoly::constant(Rationals{}, towervar::arity, 1);
    auto k = [&](long v) { return RatPoly::constant(Rationals{}, towervar::arity, v); };
    const std::vector<std::string> names = {"u1", "u2", "h", "tau", "c1", "c2"};
    bool ok = true;
    json out;

    // Degree-4 monomials in u1, u2 as polynomials in cbar1^2 (= gamma^2) and cbar2 (= beta).
    const std::vector<RatPoly> expected = {RatPoly(Rationals{}, towervar::arity), g * g - b, b, g * g - k(3) * b,
                                           k(5) * b - g * g};
    json quartic = json::array();
    for (unsigned i = 0; i <= 4; ++i) {
        const unsigned a = 4 - i, bb = i;
        RatPoly mono = one;
        for (unsigned e = 0; e < a; ++e) mono = mono * sym.u1();
        for (unsigned e = 0; e < bb; ++e) mono = mono * sym.u2();
        RatPoly general = sym.integrate(mono);
        mpq_class value = num.integrate_number(mono.substitute(towervar::gamma, k(-3)).substitute(towervar::beta, k(9)));
        bool match = general == expected[i];
        ok = ok && match;
        quartic.push_back({{"monomial", tower_monomial_name(a, bb, 0)},
                           {"general", general.to_string(names)},
                           {"value", value.get_str()},
                           {"matches", match}});
    }
    out["quartic"] = quartic;

    // Rules with pulled-back classes F, F1, F2 taken as h.
    struct Mixed {
        unsigned a, b, c;
        RatPoly expect;
    };
    const std::vector<Mixed> mixed = {
        {2, 0, 2, RatPoly(Rationals{}, towervar::arity)}, {1, 1, 2, one}, {0, 2, 2, -one},
        {3, 0, 1, RatPoly(Rationals{}, towervar::arity)}, {2, 1, 1, -g},  {1, 2, 1, RatPoly(Rationals{}, towervar::arity)},
        {0, 3, 1, RatPoly(Rationals{}, towervar::arity)},
    };
    json rules = json::array();
    for (const auto& r : mixed) {
        RatPoly mono = one;
        for (unsigned e = 0; e < r.a; ++e) mono = mono * sym.u1();
        for (unsigned e = 0; e < r.b; ++e) mono = mono * sym.u2();
        for (unsigned e = 0; e < r.c; ++e) mono = mono * sym.h();
        RatPoly v = sym.integrate(mono);
        bool match = v == r.expect;
        ok = ok && match;
        rules.push_back(
            {{"monomial", tower_monomial_name(r.a, r.b, r.c)}, {"general", v.to_string(names)}, {"matches", match}});
    }
    out["mixed_rules"] = rules;

    // Closed form of the Z^3 intersection over all splits.
    std::size_t checked = 0, failures = 0;
    const mpq_class taus[] = {mpq_class(0), mpq_class(1, 2), mpq_class(1)};
    for (long m = 1; m <= 10; ++m)
        for (long t = 0; t <= m; ++t)
            for (long b1 = 0; b1 <= m; ++b1)
                for (const auto& tau : taus) {
                    ++checked;
                    if (num.z_cube_intersection(m, t, tau, b1, m - b1) != z_cube_closed_form(m, t, tau)) ++failures;
                }
    ok = ok && failures == 0;
    out["z_cube"] = {{"cases", checked}, {"failures", failures}};
    out["z_cube_example"] = {{"m", 3}, {"t", 1}, {"tau", "0"}, {"value", num.z_cube_intersection(3, 1, 0, 3, 0).get_str()}};

    // Split dependence for general Chern classes: the z-cube value changes by
    // b2 * integral((2u1 + u2 - tau h)^3 (u2 - u1)) when b1 -> b1 - 1, b2 -> b2 + 1.
    RatPoly base = k(2) * sym.u1() + sym.u2() - sym.tau() * sym.h();
    RatPoly defect = sym.integrate(base * base * base * (sym.u2() - sym.u1()));
    out["split_defect_general"] = defect.to_string(names);
    out["split_independent_general"] = defect.is_zero();
    out["split_defect_three_conics"] =
        defect.substitute(towervar::gamma, k(-3)).substitute(towervar::beta, k(9)).to_string(names);
    out["ok"] = ok;
    return out;
}

}  // namespace conicjet
