// Python bindings. Structured results cross the boundary as JSON text and are
// decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conicjet/conic.hpp"
#include "conicjet/jet.hpp"
#include "conicjet/report.hpp"
#include "conicjet/thresholds.hpp"

namespace py = pybind11;
using namespace conicjet;

namespace {

std::string verify_json(const std::string& conics, unsigned m, unsigned t, std::uint64_t prime,
                        const std::vector<std::string>& charts, bool parallel, unsigned threads,
                        bool full_substitution, const std::string& export_matrix) {
    RunConfig cfg;
    cfg.conics = conics;
    cfg.m = m;
    cfg.t = t;
    cfg.prime = prime;
    cfg.charts.clear();
    for (const auto& c : charts) cfg.charts.push_back(parse_chart(c));
    cfg.parallel = parallel;
    cfg.threads = threads;
    cfg.full_substitution = full_substitution;
    cfg.export_matrix = export_matrix;
    py::gil_scoped_release release;
    return run_verify(cfg).verdict.to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_conicjet, m) {
    m.doc() = "Exact verifier for invariant log 2-jet differentials on three-conic configurations";

    static py::exception<Error> base(m, "ConicjetError", PyExc_RuntimeError);
    static py::exception<ConfigError> config(m, "ConfigError", base.ptr());
    static py::exception<UnsupportedConfiguration> unsupported(m, "UnsupportedConfiguration", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            py::set_error(config, e.what());
        } catch (const UnsupportedConfiguration& e) {
            py::set_error(unsupported, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    m.def("version", &version);
    m.def("_verify", &verify_json, py::arg("conics"), py::arg("m"), py::arg("t"), py::arg("prime"),
          py::arg("charts"), py::arg("parallel"), py::arg("threads"), py::arg("full_substitution"),
          py::arg("export_matrix"));
    m.def("_thresholds", [](const std::vector<long>& degrees, std::optional<unsigned> mm, std::optional<unsigned> t) {
        return thresholds_report(degrees, mm, t).dump();
    });
    m.def("_enumerate", [](const std::string& c, unsigned m_max) { return enumerate_report(c, m_max).dump(); });
    m.def("_tower", [] { return tower_report().dump(); });
    m.def("unknown_count", &AnsatzIndex::count, py::arg("m"), py::arg("t"));
    m.def(
        "jacobian_cubic",
        [](const std::string& preset) {
            const std::string names[] = {"Z0", "Z1", "Z2"};
            return jacobian_cubic(load_conics(preset)).to_string(names);
        },
        py::arg("conics") = "fermat");
    m.def(
        "exceptional_pairs",
        [](const std::string& c, unsigned m_max) {
            std::vector<std::pair<unsigned, unsigned>> out;
            for (const auto& p : exceptional_pairs(parse_rational(c), m_max)) out.emplace_back(p.m, p.t);
            return out;
        },
        py::arg("c"), py::arg("m_max") = 20);
}
