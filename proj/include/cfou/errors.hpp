#pragma once

#include <stdexcept>
#include <string>

namespace cfou {

// Numerical routine failed to meet its tolerance. Carries the achieved
// tolerance so callers can report diagnostics.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& what, double achieved_tol = -1.0)
        : std::runtime_error(what), achieved_tol_(achieved_tol) {}

    double achieved_tolerance() const noexcept { return achieved_tol_; }

private:
    double achieved_tol_;
};

// A size/cost cap was exceeded (dense oracles, exact moment routines).
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The sample path is degenerate (e.g. identically zero denominator).
class degenerate_path_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cfou
