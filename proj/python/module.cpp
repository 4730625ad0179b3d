// Python bindings: a thin JSON bridge over the shared command dispatch.
// Payloads cross the boundary as JSON text; the Python package wraps this
// with dict-in / dict-out helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elemex/api.hpp"

namespace py = pybind11;

namespace {

std::string run_json(const std::string& command, const std::string& payload_text,
                     std::uint64_t seed, int cases) {
    elemex::Json payload = elemex::Json::parse(payload_text, nullptr, false);
    if (payload.is_discarded()) {
        elemex::Json resp;
        resp["status"] = "error";
        resp["error"] = elemex::Json{{"kind", "schema-error"},
                                     {"message", "payload is not valid JSON"}};
        return elemex::dump_json(resp, false);
    }
    return elemex::dump_json(elemex::run_request(command, payload, seed, cases).response, false);
}

std::string selftest_json(std::uint64_t seed, int cases) {
    return elemex::dump_json(elemex::selftest_report_to_json(elemex::run_selftest(seed, cases)),
                             false);
}

}  // namespace

PYBIND11_MODULE(_elemex, m) {
    m.doc() = "exact elementary-group word calculator (JSON bridge)";
    m.def("run_json", &run_json, py::arg("command"), py::arg("payload"), py::arg("seed") = 0,
          py::arg("cases") = 500,
          "Dispatch one command with a JSON payload; returns the JSON response envelope.");
    m.def("selftest_json", &selftest_json, py::arg("seed") = 0, py::arg("cases") = 500,
          "Run every property suite; returns the JSON report.");
    m.def("commands", [] {
        return std::vector<std::string>{"eval",   "factor",  "rewrite", "monomialize", "dilate",
                                        "lift",   "project", "check",   "selftest"};
    });
}
