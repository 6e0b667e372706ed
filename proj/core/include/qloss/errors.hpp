#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace qloss {

/// Invalid or out-of-range user input (CLI maps this to exit code 2).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A model assumption does not hold for the given parameters, e.g. a
/// stability condition, a moment-class validity condition, or an
/// admissibility threshold (CLI exit code 3).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an epsilon-admissibility condition fails; carries the three
/// threshold terms so callers can report which one was binding.
class AdmissibilityError : public ModelError {
public:
    AdmissibilityError(const std::string& what, std::array<double, 3> terms)
        : ModelError(what), terms(terms) {}
    std::array<double, 3> terms;
};

/// Iteration failed to converge to the requested tolerance (CLI exit code 4).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qloss
