#pragma once

#include <stdexcept>
#include <string>

namespace nsch {

/// Invalid grid, parameters, or run configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a potential or diagnostic.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mollification radius too small to be represented on the grid.
class ResolvabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input series (unsorted times, too few samples, ...).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite values detected after a time step.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double t, double dt)
        : std::runtime_error("numerical blow-up at t=" + std::to_string(t) +
                             " (dt=" + std::to_string(dt) + ")"),
          t_(t), dt_(dt) {}
    double t() const { return t_; }
    double dt() const { return dt_; }

private:
    double t_;
    double dt_;
};

}  // namespace nsch
