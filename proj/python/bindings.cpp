#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "credo/error.hpp"
#include "credo/executor.hpp"
#include "credo/family.hpp"

namespace py = pybind11;

namespace {

// Requests and results cross the boundary as JSON text; the Python side
// turns them into dicts.
std::string execute_json(const std::string& request)
{
    credo::Catalog catalog;
    credo::ExecutionContext ctx;
    ctx.catalog = &catalog;
    const auto ex = credo::execute(credo::Json::parse(request), ctx);
    credo::Json out;
    out["request"] = ex.request;
    out["result"] = ex.result;
    out["passed"] = ex.passed;
    out["text"] = ex.text;
    return out.dump();
}

std::string event_family_json(const std::string& distribution, const std::string& lambda, const std::string& params)
{
    const auto dist = credo::distribution_from_json(credo::Json::parse(distribution));
    const auto fam = credo::event_family(dist, credo::parse_fraction(lambda),
                                         credo::family_params_from_json(credo::Json::parse(params)));
    credo::Json out = credo::Json::array();
    for (const auto& m : fam.members) out.push_back(credo::to_json(m));
    return out.dump();
}

std::string scenario_json(const std::string& name) { return credo::to_json(credo::build_scenario(name)).dump(); }

py::tuple replay_json(const std::string& session)
{
    const auto report = credo::replay_session(credo::session_from_json(credo::Json::parse(session)));
    return py::make_tuple(report.text, report.entries, report.mismatches);
}

}  // namespace

PYBIND11_MODULE(_credo, m)
{
    m.doc() = "Strength-based subjective probability engine";

    py::register_exception<credo::Error>(m, "CredoError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const credo::QueryPending&) {
            py::set_error(PyExc_RuntimeError, "judgment query pending");
        } catch (const nlohmann::json::exception& e) {
            py::set_error(PyExc_ValueError, e.what());
        }
    });

    m.def("execute", &execute_json, py::arg("request"));
    m.def("event_family", &event_family_json, py::arg("distribution"), py::arg("lambda_"), py::arg("params") = "{}");
    m.def("scenario", &scenario_json, py::arg("name"));
    m.def("scenario_names", &credo::scenario_names);
    m.def("replay", &replay_json, py::arg("session"));
    m.attr("session_version") = credo::kSessionVersion;
}
