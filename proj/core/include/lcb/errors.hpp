#pragma once

#include <stdexcept>
#include <string>

namespace lcb {

/// Raised when a numerical routine cannot reach its requested tolerance.
/// Carries the best estimate obtained so far and a bound on its error.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

} // namespace lcb
