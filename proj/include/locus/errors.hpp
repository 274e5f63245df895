#pragma once

#include <stdexcept>
#include <string>

namespace locus {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input (bad rational syntax, zero elements, invalid parameters).
class InputError : public Error {
public:
    using Error::Error;
};

/// A computation would exceed a configured bound (factorization, enumeration,
/// sieve range, oracle size). Maps to CLI exit code 4.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Seeing this is a bug.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

struct ZeroInput : InputError {
    ZeroInput() : InputError("zero is not allowed: all elements must be nonzero rationals") {}
};

struct FactorizationCapacityExceeded : CapacityError {
    explicit FactorizationCapacityExceeded(const std::string& what)
        : CapacityError("factorization capacity exceeded: " + what) {}
};

struct UnitInput : InputError {
    UnitInput() : InputError("input is a unit (+1 or -1); power layers are unbounded") {}
};

struct BadPrime : InputError {
    explicit BadPrime(const std::string& what) : InputError("bad prime: " + what) {}
};

struct RangeTooLarge : CapacityError {
    explicit RangeTooLarge(const std::string& what) : CapacityError("sieve range too large: " + what) {}
};

struct NotQFree : InputError {
    explicit NotQFree(const std::string& what) : InputError("element is not q-free: " + what) {}
};

struct UnitElement : InputError {
    UnitElement() : InputError("unit element (+1 or -1) in hyperplane construction") {}
};

struct InstanceTooLarge : CapacityError {
    explicit InstanceTooLarge(const std::string& what) : CapacityError("covering instance too large: " + what) {}
};

struct PerfectPowerPresent : InputError {
    explicit PerfectPowerPresent(const std::string& what)
        : InputError("perfect power present in prime-case reduction: " + what) {}
};

struct OracleLimitExceeded : CapacityError {
    explicit OracleLimitExceeded(const std::string& what) : CapacityError("oracle limit exceeded: " + what) {}
};

struct NonUnitExponent : InputError {
    explicit NonUnitExponent(const std::string& what) : InputError("exponent not coprime to q: " + what) {}
};

struct NotEven : InputError {
    NotEven() : InputError("exceptional pair matching requires even n") {}
};

struct WrongCardinality : InputError {
    explicit WrongCardinality(std::size_t got)
        : InputError("expected a 2-element set, got " + std::to_string(got)) {}
};

struct DegenerateParameters : InputError {
    explicit DegenerateParameters(const std::string& what) : InputError("degenerate parameters: " + what) {}
};

struct InapplicableCase : InputError {
    explicit InapplicableCase(const std::string& what) : InputError("inapplicable case: " + what) {}
};

}  // namespace locus
