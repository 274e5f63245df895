#pragma once

// JSON documents for verdicts, sieve reports and families. Field order is
// fixed (ordered_json) and rationals are always "num/den" strings, so equal
// inputs serialize to identical bytes.

#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "locus/rational.hpp"
#include "locus/sieve.hpp"
#include "locus/verdict.hpp"

namespace locus::json_io {

using Json = nlohmann::ordered_json;

Json to_json(const FactoredRational& x);
Json to_json(const sieve::SieveReport& report);
Json to_json(const Certificate& c);

/// {status, certificate, excluded_primes, n, elements[, evidence]}.
Json to_json(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements);

/// Array of rational strings.
Json family_to_json(std::span<const FactoredRational> family);

struct VerdictDocument {
    Verdict verdict;
    std::int64_t n = 0;
    std::vector<FactoredRational> elements;
};

/// Inverse of to_json(Verdict, ...). Throws InputError on malformed documents.
VerdictDocument verdict_from_json(const Json& doc);
Certificate certificate_from_json(const Json& doc);
sieve::SieveReport report_from_json(const Json& doc);

}  // namespace locus::json_io
