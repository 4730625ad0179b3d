#pragma once

// Seeded property suites covering every module, with deterministic
// per-suite sub-seeds so reports are byte-identical for a fixed master
// seed regardless of execution order.

#include "elemex/json_io.hpp"

namespace elemex {

struct SuiteReport {
    std::string name;
    int cases = 0;
    std::vector<std::string> failures;  // minimized counterexamples, JSON text
};

struct SelfTestReport {
    std::uint64_t seed = 0;
    int cases_per_suite = 0;
    std::vector<SuiteReport> suites;

    std::size_t total_failures() const;
};

/// Runs every suite with `cases` cases each (suites with fixed batteries
/// ignore the count). Failures are report content, never exceptions.
SelfTestReport run_selftest(std::uint64_t seed, int cases);

/// Runs a single suite by name; throws Domain for unknown names.
SuiteReport run_suite(const std::string& name, std::uint64_t seed, int cases);

std::vector<std::string> suite_names();

Json selftest_report_to_json(const SelfTestReport& r);

}  // namespace elemex
