#pragma once

#include <stdexcept>
#include <string>

namespace bbm {

/// Configuration is malformed or outside the supported catalog.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or iteration failed to reach its requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double requested, double achieved)
        : std::runtime_error(what + " (requested " + std::to_string(requested) +
                             ", achieved " + std::to_string(achieved) + ")"),
          requested_tol(requested), achieved_tol(achieved) {}
    double requested_tol;
    double achieved_tol;
};

/// Time stepping blew up (norm growth beyond the stability guard).
class StabilityError : public std::runtime_error {
public:
    explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A query outside the solved or sampled range.
class RangeError : public std::runtime_error {
public:
    explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace bbm
