#ifndef INTGOF_ERROR_HPP
#define INTGOF_ERROR_HPP

#include <stdexcept>
#include <string>

namespace intgof {

/// Numerical routine failed to reach its tolerance. Carries the error
/// estimate actually achieved so callers can report it.
class NumericError : public std::runtime_error {
public:
    NumericError(const std::string& what, double achieved_tolerance)
        : std::runtime_error(what + " (achieved tolerance " +
                             std::to_string(achieved_tolerance) + ")"),
          achieved_(achieved_tolerance) {}

    double achieved_tolerance() const { return achieved_; }

private:
    double achieved_;
};

/// A required precomputed input (e.g. a null table) is missing.
class DependencyError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace intgof

#endif
