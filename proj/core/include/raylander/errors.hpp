#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace raylander {

/// Base error carrying a machine-readable reason slug alongside the
/// human-readable message. The three subclasses mirror the CLI exit
/// codes: domain/validation (1), numeric non-convergence (2),
/// hypothesis violation (3).
class Error : public std::runtime_error {
public:
    Error(std::string reason, const std::string& what)
        : std::runtime_error(what), reason_(std::move(reason)) {}

    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

/// Bad inputs: points outside a domain, parameters out of range,
/// malformed structures.
class DomainError : public Error {
public:
    DomainError(std::string reason, const std::string& what)
        : Error(std::move(reason), what) {}
};

/// Numeric failure: an iteration did not reach its tolerance, or a
/// computation left the representable range and must be restructured.
class ConvergenceError : public Error {
public:
    ConvergenceError(std::string reason, const std::string& what)
        : Error(std::move(reason), what) {}
};

/// A theorem hypothesis does not hold for the requested inputs
/// (e.g. unbounded post-singular set passed to the landing engine).
class HypothesisError : public Error {
public:
    HypothesisError(std::string reason, const std::string& what)
        : Error(std::move(reason), what) {}
};

} // namespace raylander
