#include "lcb/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcb {

namespace {

double trapezoid_weight(std::size_t i, std::size_t n) {
    return (i == 0 || i + 1 == n) ? 0.5 : 1.0;
}

} // namespace

GridDensity::GridDensity(double x_min, double step, std::vector<double> values)
    : x_min_(x_min), step_(step), values_(std::move(values)) {
    if (!(step_ > 0.0))
        throw std::invalid_argument("GridDensity: step must be positive");
    if (values_.size() < 2)
        throw std::invalid_argument("GridDensity: need at least 2 samples");
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("GridDensity: values must be finite and nonnegative");
    const double m = mass();
    if (std::abs(m - 1.0) > 1e-6)
        throw std::invalid_argument("GridDensity: mass " + std::to_string(m) +
                                    " outside [1-1e-6, 1+1e-6]");
}

GridDensity GridDensity::normalized(double x_min, double step, std::vector<double> values) {
    double m = 0.0;
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i)
        m += trapezoid_weight(i, n) * values[i];
    m *= step;
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("GridDensity::normalized: mass must be positive and finite");
    for (double& v : values)
        v /= m;
    return GridDensity(x_min, step, std::move(values));
}

double GridDensity::mass() const {
    double m = 0.0;
    const std::size_t n = values_.size();
    for (std::size_t i = 0; i < n; ++i)
        m += trapezoid_weight(i, n) * values_[i];
    return m * step_;
}

double GridDensity::weighted_sum(const std::function<double(std::size_t)>& g) const {
    double s = 0.0;
    const std::size_t n = values_.size();
    for (std::size_t i = 0; i < n; ++i)
        s += trapezoid_weight(i, n) * g(i);
    return s * step_;
}

double GridDensity::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double entropy_of_grid(const GridDensity& f) {
    const double m = f.mass();
    return f.weighted_sum([&](std::size_t i) {
        const double v = f.values()[i] / m;
        return v > 0.0 ? -v * std::log(v) : 0.0;
    });
}

double kl_to_gaussian(const GridDensity& f) {
    const double m2 = second_moment_of_grid(f);
    constexpr double kTwoPiE = 17.079468445347132; // 2*pi*e
    return 0.5 * std::log(kTwoPiE * m2) - entropy_of_grid(f);
}

double convolution_mass(const GridDensity& f, const GridDensity& g) {
    return f.mass() * g.mass();
}

GridDensity convolve(const GridDensity& f, const GridDensity& g) {
    const double step = f.step();
    if (std::abs(g.step() - step) > 1e-12 * step)
        throw std::invalid_argument("convolve: grids must share the same step");

    const std::size_t nf = f.size();
    const std::size_t ng = g.size();
    const std::size_t n_out = nf + ng - 1;

    std::vector<double> out(n_out, 0.0);
    for (std::size_t i = 0; i < nf; ++i) {
        const double fi = f.values()[i];
        if (fi == 0.0) continue;
        double* dst = out.data() + i;
        const double* gv = g.values().data();
        for (std::size_t j = 0; j < ng; ++j)
            dst[j] += fi * gv[j];
    }
    // Trapezoid rule over the overlap: the summation boundary samples enter
    // at half weight (for each output k the overlap runs over
    // i in [max(0, k-ng+1), min(nf-1, k)]).
    for (std::size_t k = 0; k < n_out; ++k) {
        const std::size_t lo = k >= ng ? k - ng + 1 : 0;
        const std::size_t hi = std::min(nf - 1, k);
        out[k] -= 0.5 * (f.values()[lo] * g.values()[k - lo] + f.values()[hi] * g.values()[k - hi]);
        out[k] *= step;
    }

    return GridDensity::normalized(f.x_min() + g.x_min(), step, std::move(out));
}

double moment_of_grid(const GridDensity& f, double p, double center) {
    if (!(p > -1.0))
        throw std::domain_error("moment_of_grid: requires p > -1");
    const double m = f.mass();
    const double step = f.step();
    const bool log_form = std::abs(p) < 1e-8;

    // |x - c|^p (p < 1) and ln|x - c| bend sharply near the center, where
    // plain sampling is inaccurate (or singular on a hit). Cells close to
    // the center use the exact integral of the weight over the cell instead;
    // antiderivatives: |u|^{p+1} sgn(u) / (p+1) and u ln|u| - u.
    auto exact_cell_average = [&](double lo, double hi) {
        if (log_form) {
            auto anti = [](double u) { return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u; };
            return (anti(hi) - anti(lo)) / step;
        }
        auto anti = [&](double u) {
            return u == 0.0 ? 0.0
                            : std::copysign(std::pow(std::abs(u), p + 1.0), u) / (p + 1.0);
        };
        return (anti(hi) - anti(lo)) / step;
    };

    const bool needs_exact = log_form || p < 1.0;
    const double s = f.weighted_sum([&](std::size_t i) {
        const double v = f.values()[i] / m;
        const double u = f.x(i) - center;
        if (needs_exact && std::abs(u) <= 8.0 * step)
            return v * exact_cell_average(u - 0.5 * step, u + 0.5 * step);
        return log_form ? v * std::log(std::abs(u)) : v * std::pow(std::abs(u), p);
    });
    return log_form ? std::exp(s) : std::pow(s, 1.0 / p);
}

double mean_of_grid(const GridDensity& f) {
    const double m = f.mass();
    return f.weighted_sum([&](std::size_t i) { return f.x(i) * f.values()[i] / m; });
}

double second_moment_of_grid(const GridDensity& f) {
    const double m = f.mass();
    return f.weighted_sum([&](std::size_t i) {
        const double x = f.x(i);
        return x * x * f.values()[i] / m;
    });
}

double variance_of_grid(const GridDensity& f) {
    const double mu = mean_of_grid(f);
    const double m = f.mass();
    return f.weighted_sum([&](std::size_t i) {
        const double d = f.x(i) - mu;
        return d * d * f.values()[i] / m;
    });
}

} // namespace lcb
