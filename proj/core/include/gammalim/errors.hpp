#pragma once

#include <stdexcept>
#include <string>

namespace gammalim {

/// Argument hit a pole of the Gamma function (z = -pole_index).
class PoleError : public std::domain_error {
public:
    explicit PoleError(long pole_index)
        : std::domain_error("pole at z = -" + std::to_string(pole_index)),
          pole_index_(pole_index) {}
    PoleError(long pole_index, const std::string& what)
        : std::domain_error(what), pole_index_(pole_index) {}

    long pole_index() const noexcept { return pole_index_; }

private:
    long pole_index_;
};

/// Argument outside the mathematical domain of the operation
/// (e.g. the defining integral requires Re(z) > 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// |Gamma(z)| exceeds double range; caller should switch to log_gamma.
class OverflowToLogError : public std::range_error {
public:
    using std::range_error::range_error;
    OverflowToLogError()
        : std::range_error("|Gamma(z)| exceeds double range; use log_gamma") {}
};

/// Extrapolation table failed to contract; the underlying evaluator is broken.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// z sits on a pole but n*z does not sit near one. Unreachable for integer n;
/// guards malformed inputs.
class DegenerateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace gammalim
