#pragma once

#include <stdexcept>
#include <string>

namespace kcolor {

/// Raised when a dense or brute-force computation would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative method stops at its iteration cap above tolerance.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Raised by edge-state validation; carries the lattice element that broke a rule.
class InvalidAssignment : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kcolor
