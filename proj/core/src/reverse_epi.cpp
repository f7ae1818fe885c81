#include "lcb/reverse_epi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lcb {

namespace {

constexpr double kPiE = std::numbers::pi * std::numbers::e;

void require_zero_mean(const DistributionSpec& s, const char* who) {
    if (std::abs(s.mean()) > 1e-12)
        throw std::invalid_argument(std::string(who) + ": summands must be zero-mean");
}

// Entropy of X + Y via per-pair grid convolution on a common step chosen so
// the sum's support spans ~grid_n points.
double entropy_of_sum(const DistributionSpec& x, const DistributionSpec& y, int grid_n) {
    const double half_x = x.extent_for_mass(1e-9) * x.natural_scale();
    const double half_y = y.extent_for_mass(1e-9) * y.natural_scale();
    const double step = 2.0 * (half_x + half_y) / static_cast<double>(grid_n - 1);

    // Point samples, except that cells touching a support edge take the
    // exact cell average: a sample across a density jump would bias the
    // trapezoid mass by O(step).
    auto grid_of = [&](const DistributionSpec& s, double half, double& raw_mass) {
        double lo = std::max(s.mean() - half, s.support_lo());
        double hi = std::min(s.mean() + half, s.support_hi());
        if (std::isfinite(s.support_lo())) lo = s.support_lo() - 2.0 * step;
        if (std::isfinite(s.support_hi())) hi = s.support_hi() + 2.0 * step;
        const int n = std::max(64, static_cast<int>(std::ceil((hi - lo) / step)) + 1);
        std::vector<double> values(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double xc = lo + step * i;
            const bool near_edge =
                (std::isfinite(s.support_lo()) && std::abs(xc - s.support_lo()) < 1.5 * step) ||
                (std::isfinite(s.support_hi()) && std::abs(xc - s.support_hi()) < 1.5 * step);
            values[static_cast<std::size_t>(i)] =
                near_edge ? integrate([&](double t) { return s.pdf(t); }, xc - 0.5 * step,
                                      xc + 0.5 * step) /
                                step
                          : s.pdf(xc);
        }
        // Truncation loss is judged on the true density over the covered
        // range, not on the trapezoid sum (which wiggles at kinks). The
        // density may kink at its location shift; splitting there keeps the
        // kink on an interval endpoint where the quadrature is exact.
        auto pdf = [&](double t) { return s.pdf(t); };
        const double a = std::max(lo, s.support_lo());
        const double b = std::min(lo + step * (n - 1), s.support_hi());
        const double kink = s.shift();
        raw_mass = (kink > a && kink < b)
                       ? integrate(pdf, a, kink) + integrate(pdf, kink, b)
                       : integrate(pdf, a, b);
        return GridDensity::normalized(lo, step, std::move(values));
    };

    double mass_x = 0.0, mass_y = 0.0;
    GridDensity gx = grid_of(x, half_x, mass_x);
    GridDensity gy = grid_of(y, half_y, mass_y);

    // The convolution covers the Minkowski sum of the two ranges, so its
    // mass shortfall is the product of the inputs' covered masses.
    const double raw_mass = mass_x * mass_y;
    if (std::abs(raw_mass - 1.0) > 1e-6)
        throw AccuracyError("entropy_of_sum: convolution mass loss exceeds 1e-6", raw_mass,
                            std::abs(raw_mass - 1.0));

    return entropy_of_grid(convolve(gx, gy));
}

EPIReport build_report(double h_x, double h_y, double h_sum, int n, double constant) {
    EPIReport rep;
    rep.n_x = entropy_power(h_x, n);
    rep.n_y = entropy_power(h_y, n);
    rep.n_sum = entropy_power(h_sum, n);
    rep.forward_slack = rep.n_sum - (rep.n_x + rep.n_y);
    rep.reverse_constant = constant;
    rep.reverse_slack = constant * (rep.n_x + rep.n_y) - rep.n_sum;
    return rep;
}

} // namespace

double entropy_power(double h_nats, int n) {
    if (n < 1)
        throw std::domain_error("entropy_power: requires n >= 1");
    if (!std::isfinite(h_nats))
        throw std::domain_error("entropy_power: entropy must be finite");
    return std::exp(2.0 * h_nats / static_cast<double>(n));
}

EPIReport verify_reverse_epi_scalar(const DistributionSpec& x, const DistributionSpec& y,
                                    int grid_n) {
    if (!x.log_concave() || !y.log_concave())
        throw std::invalid_argument("verify_reverse_epi_scalar: both specs must be log-concave");
    require_zero_mean(x, "verify_reverse_epi_scalar");
    require_zero_mean(y, "verify_reverse_epi_scalar");
    const double h_sum = entropy_of_sum(x, y, grid_n);
    return build_report(x.entropy(), y.entropy(), h_sum, 1, 0.5 * kPiE);
}

EPIReport verify_reverse_epi_gamma(const DistributionSpec& x, const DistributionSpec& y,
                                   int grid_n) {
    if (!x.gamma_concave() || !y.gamma_concave() || !x.symmetric() || !y.symmetric())
        throw std::invalid_argument(
            "verify_reverse_epi_gamma: both specs must be symmetric gamma-concave");
    const double g = x.concavity_gamma();
    if (std::abs(y.concavity_gamma() - g) > 1e-12)
        throw std::invalid_argument("verify_reverse_epi_gamma: gammas must match");
    if (!(g > -1.0 / 3.0 && g < 0.0))
        throw std::domain_error("verify_reverse_epi_gamma: requires gamma in (-1/3, 0)");
    const double constant = kPiE * (g + 1.0) * (g + 1.0) / ((2.0 * g + 1.0) * (3.0 * g + 1.0));
    const double h_sum = entropy_of_sum(x, y, grid_n);
    return build_report(x.entropy(), y.entropy(), h_sum, 1, constant);
}

EPIReport verify_reverse_epi_product(const ProductDistribution& x, const ProductDistribution& y,
                                     int grid_n) {
    if (x.n() != y.n())
        throw std::invalid_argument("verify_reverse_epi_product: dimensions must match");
    const int n = x.n();
    for (const auto& pd : {x, y})
        for (const auto& c : pd.components()) {
            if (!c.symmetric() || !c.log_concave())
                throw std::invalid_argument(
                    "verify_reverse_epi_product: components must be symmetric log-concave");
        }
    const double t0 = y.components()[0].variance() / x.components()[0].variance();
    for (int i = 1; i < n; ++i) {
        const double ti = y.components()[static_cast<std::size_t>(i)].variance() /
                          x.components()[static_cast<std::size_t>(i)].variance();
        if (std::abs(ti - t0) > 1e-9 * t0)
            throw std::invalid_argument(
                "verify_reverse_epi_product: covariances must be proportional "
                "(coordinate " + std::to_string(i) + " breaks K_Y = t K_X)");
    }

    double h_sum = 0.0;
    for (int i = 0; i < n; ++i)
        h_sum += entropy_of_sum(x.components()[static_cast<std::size_t>(i)],
                                y.components()[static_cast<std::size_t>(i)], grid_n);

    const bool uncond = x.unconditional() && y.unconditional();
    const double constant = 2.0 * kPiE * c_constant(n, uncond);
    return build_report(x.entropy(), y.entropy(), h_sum, n, constant);
}

} // namespace lcb
