#pragma once

// One-shot command runner behind the `locus` executable.
//
// Exit codes: 0 holds (or success), 1 fails, 2 inconclusive, 3 parse or
// input error, 4 capacity exceeded, 5 internal inconsistency.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locus/json_io.hpp"

namespace locus::cli {
using Json = json_io::Json;
}

namespace locus::cli {

enum ExitCode : int {
    kHolds = 0,
    kFails = 1,
    kInconclusive = 2,
    kParseError = 3,
    kCapacityError = 4,
    kInconsistency = 5,
};

struct RunConfig {
    /// decide | sieve | oracle | generate | verify-certificate
    std::string command;
    std::int64_t n = 0;
    std::vector<std::string> elements;
    /// One element per line (decide, sieve, oracle); the verdict document for verify-certificate.
    std::optional<std::string> file;
    std::uint64_t lo = 3;
    std::uint64_t hi = 1000;
    std::uint64_t ceiling = 1ULL << 24;
    std::size_t oracle_limit = 8;
    std::optional<std::string> json_path;
    bool evidence = false;
    std::uint64_t evidence_bound = 10000;
    bool monte_carlo = false;
    std::uint64_t monte_carlo_samples = 100000;
    unsigned threads = 1;

    // generate
    std::string family;
    std::int64_t a = 0, b = 0, e = 1;
    std::uint64_t q1 = 0, q2 = 0, pj = 0;
    std::string case_tag;
    std::string alpha1 = "1", alpha2 = "1";
};

struct RunResult {
    int exit_code = 0;
    Json document;
    std::string error;
};

RunResult run(const RunConfig& config);

/// Parses argv, runs, prints the document (or error) and returns the exit code.
int main(int argc, char** argv);

}  // namespace locus::cli
