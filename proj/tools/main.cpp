// Command-line front end: JSON requests in, JSON responses out.
// Exit codes: 0 ok, 1 domain error, 2 schema/parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "elemex/api.hpp"

namespace {

using elemex::Json;

std::string read_stream(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw elemex::Error(elemex::ErrKind::SchemaError, "cannot open input: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_stream(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw elemex::Error(elemex::ErrKind::SchemaError, "cannot open output: " + path);
    f << text << "\n";
}

Json parse_json(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw elemex::Error(elemex::ErrKind::SchemaError, "input is not valid JSON");
    return j;
}

elemex::ApiOutcome error_outcome(const elemex::Error& e) {
    elemex::ApiOutcome o;
    o.response["status"] = "error";
    o.response["error"] =
        Json{{"kind", elemex::err_kind_name(e.kind())}, {"message", e.what()}};
    o.exit_code = e.kind() == elemex::ErrKind::SchemaError ? 2 : 1;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact elementary-group word calculator"};
    app.require_subcommand(1);

    std::string input = "-", output = "-";
    std::uint64_t seed = 0;
    int cases = 500;
    bool pretty = false;
    bool mutate = false;
    app.add_option("--input", input, "input file or - for stdin")->capture_default_str();
    app.add_option("--output", output, "output file or - for stdout")->capture_default_str();
    app.add_option("--seed", seed, "seed for selftest")->capture_default_str();
    app.add_option("--cases", cases, "cases per selftest suite")->capture_default_str();
    app.add_flag("--pretty", pretty, "indent the JSON output");
    app.add_flag("--mutate", mutate, "fault injection: flip a generator sign (testing only)");

    const std::vector<std::string> commands = {"eval",   "factor",  "rewrite",
                                               "monomialize", "dilate", "lift",
                                               "project", "check",  "selftest"};
    for (const auto& c : commands) app.add_subcommand(c, c + " request")->fallthrough();
    CLI::App* batch = app.add_subcommand("batch", "newline-delimited requests");
    batch->fallthrough();

    CLI11_PARSE(app, argc, argv);
    elemex::testing::flip_steinberg_sign = mutate;

    try {
        if (app.got_subcommand(batch)) {
            std::istringstream lines(read_stream(input));
            std::string line, text;
            int worst = 0;
            while (std::getline(lines, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                elemex::ApiOutcome o;
                try {
                    Json req = parse_json(line);
                    if (!req.is_object() || !req.contains("command"))
                        throw elemex::Error(elemex::ErrKind::SchemaError,
                                            "batch line needs a 'command' field");
                    std::string cmd = req.at("command").get<std::string>();
                    Json payload = req.contains("payload") ? req.at("payload") : Json::object();
                    std::uint64_t s = seed;
                    if (req.contains("seed")) s = std::stoull(req.at("seed").get<std::string>());
                    o = elemex::run_request(cmd, payload, s, cases);
                } catch (const elemex::Error& e) {
                    o = error_outcome(e);
                }
                text += elemex::dump_json(o.response, false) + "\n";
                worst = std::max(worst, o.exit_code);
            }
            if (output == "-") {
                std::cout << text;
            } else {
                std::ofstream f(output);
                f << text;
            }
            return worst;
        }

        std::string cmd;
        for (const auto& c : commands)
            if (app.got_subcommand(c)) cmd = c;
        Json payload = Json::object();
        if (cmd != "selftest") payload = parse_json(read_stream(input));
        elemex::ApiOutcome o = elemex::run_request(cmd, payload, seed, cases);
        write_stream(output, elemex::dump_json(o.response, pretty));
        return o.exit_code;
    } catch (const elemex::Error& e) {
        elemex::ApiOutcome o = error_outcome(e);
        std::cout << elemex::dump_json(o.response, pretty) << "\n";
        return o.exit_code;
    }
}
