#pragma once

#include <stdexcept>
#include <string>

namespace mfrac {

/// Invalid argument or an input outside an operator's domain
/// (non-positive abscissa, power series with excluded constant term, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Adaptive refinement stalled before reaching the requested tolerance.
class NonConvergentError : public std::runtime_error {
public:
    explicit NonConvergentError(const std::string& what) : std::runtime_error(what) {}
};

/// Refinement trace indicates the integral grows without stabilizing.
class DivergentError : public std::runtime_error {
public:
    explicit DivergentError(const std::string& what) : std::runtime_error(what) {}
};

/// Truncated window is too aggressive: the integrand has not decayed at the edge.
class TailError : public std::runtime_error {
public:
    explicit TailError(const std::string& what) : std::runtime_error(what) {}
};

/// Series truncation budget exhausted before the tail decayed.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// A derivative bundle does not reach the order an operator requires.
class MissingDerivativeError : public std::invalid_argument {
public:
    explicit MissingDerivativeError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace mfrac
