#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>

namespace lcb {

enum class Units { nats, bits };

/// One evaluated inequality: an optional lower bound, the measured value,
/// an optional upper bound, and the slack against each present side.
/// passed is true iff the measured value respects every present side
/// within the tolerance recorded in parameters["tol"].
struct BoundReport {
    std::string name;
    std::optional<double> lower;
    double measured = 0.0;
    std::optional<double> upper;
    double slack_lower = std::numeric_limits<double>::quiet_NaN();
    double slack_upper = std::numeric_limits<double>::quiet_NaN();
    Units units = Units::nats;
    std::map<std::string, double> parameters;
    bool passed = false;
};

inline BoundReport make_bound_report(std::string name, std::optional<double> lower,
                                     double measured, std::optional<double> upper, double tol,
                                     std::map<std::string, double> parameters = {}) {
    BoundReport r;
    r.name = std::move(name);
    r.lower = lower;
    r.measured = measured;
    r.upper = upper;
    r.parameters = std::move(parameters);
    r.parameters["tol"] = tol;
    r.passed = true;
    if (lower) {
        r.slack_lower = measured - *lower;
        if (!(r.slack_lower >= -tol)) r.passed = false;
    }
    if (upper) {
        r.slack_upper = *upper - measured;
        if (!(r.slack_upper >= -tol)) r.passed = false;
    }
    return r;
}

constexpr double kLn2 = 0.6931471805599453;

inline double to_bits(double nats) { return nats / kLn2; }

} // namespace lcb
