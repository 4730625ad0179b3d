#pragma once

// Command dispatch shared by the command-line tool and the Python module:
// one JSON payload in, one JSON response envelope out.

#include "elemex/selftest.hpp"

namespace elemex {

/// Raw dispatch; throws Error on invalid payloads or domain failures.
/// `seed` and `cases` apply to the selftest command only.
Json run_command(const std::string& command, const Json& payload, std::uint64_t seed = 0,
                 int cases = 500);

struct ApiOutcome {
    Json response;      // {"status":"ok","result":...} or {"status":"error","error":{...}}
    int exit_code = 0;  // 0 ok, 1 domain error, 2 schema error
};

/// Envelope form: never throws; errors become the error response.
ApiOutcome run_request(const std::string& command, const Json& payload, std::uint64_t seed = 0,
                       int cases = 500);

}  // namespace elemex
