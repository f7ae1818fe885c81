#include "lcb/entropy_bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lcb {

namespace {

constexpr double kPiE = std::numbers::pi * std::numbers::e;

void require_symmetric_log_concave(const DistributionSpec& spec, const char* who) {
    if (!spec.symmetric() || !spec.log_concave())
        throw std::invalid_argument(std::string(who) + ": requires a symmetric log-concave spec");
}

void require_log_concave(const DistributionSpec& spec, const char* who) {
    if (!spec.log_concave())
        throw std::invalid_argument(std::string(who) + ": requires a log-concave spec");
}

} // namespace

double alpha(double p) {
    if (!(p > 0.0))
        throw std::domain_error("alpha: requires p > 0");
    return 2.0 * std::exp(1.0 / p) * std::exp(log_gamma(1.0 + 1.0 / p)) * std::pow(p, 1.0 / p);
}

double entropy_upper(const DistributionSpec& spec, double p) {
    return std::log(alpha(p)) + std::log(spec.abs_moment(p, 0.0).value);
}

double entropy_lower_symmetric(const DistributionSpec& spec, double p) {
    require_symmetric_log_concave(spec, "entropy_lower_symmetric");
    const double norm = spec.abs_moment(p, 0.0).value;
    if (p == 2.0)
        return std::log(2.0 * norm);
    return std::log(2.0 * norm) - log_gamma(p + 1.0) / p;
}

double entropy_lower_general(const DistributionSpec& spec, double p) {
    require_log_concave(spec, "entropy_lower_general");
    if (!(p >= 1.0))
        throw std::domain_error("entropy_lower_general: requires p >= 1");
    if (p == 2.0)
        return std::log(2.0 * std::sqrt(spec.variance()));
    const double norm = spec.abs_moment(p, spec.mean()).value;
    return std::log(2.0 * norm) - log_gamma(p + 1.0) / p;
}

BoundReport density_max_bound(const DistributionSpec& spec, double p, int grid_n) {
    require_symmetric_log_concave(spec, "density_max_bound");
    const double upper =
        gamma_pow(p + 1.0, 1.0 / p) / (2.0 * spec.abs_moment(p, 0.0).value);
    const double measured = default_grid(spec, grid_n).max_value();
    return make_bound_report("density_max", std::nullopt, measured, upper, 1e-9,
                             {{"p", p}});
}

BoundReport moment_comparison_symmetric(const DistributionSpec& spec, double p, double q) {
    require_symmetric_log_concave(spec, "moment_comparison_symmetric");
    if (!(p <= q))
        throw std::invalid_argument("moment_comparison_symmetric: requires p <= q");
    const double norm_p = spec.abs_moment(p, 0.0).value;
    const double norm_q = spec.abs_moment(q, 0.0).value;
    const double scaled_p = norm_p / gamma_pow(p + 1.0, 1.0 / p);
    const double scaled_q = norm_q / gamma_pow(q + 1.0, 1.0 / q);

    const double tol = 1e-9 * std::max(1.0, norm_p);
    BoundReport r = make_bound_report("moment_comparison_symmetric", std::nullopt, scaled_q,
                                      scaled_p, tol, {{"p", p}, {"q", q}});
    // sandwich ||X||_p <= ||X||_q <= (Gamma(q+1)^{1/q}/Gamma(p+1)^{1/p}) ||X||_p
    const double ratio = gamma_pow(q + 1.0, 1.0 / q) / gamma_pow(p + 1.0, 1.0 / p);
    r.parameters["norm_p"] = norm_p;
    r.parameters["norm_q"] = norm_q;
    r.parameters["sandwich_hi"] = ratio * norm_p;
    if (!(norm_p <= norm_q + tol) || !(norm_q <= ratio * norm_p + tol)) r.passed = false;
    return r;
}

BoundReport moment_comparison_general(const DistributionSpec& spec, double p, double q) {
    require_log_concave(spec, "moment_comparison_general");
    if (!(1.0 <= p && p <= q))
        throw std::invalid_argument("moment_comparison_general: requires 1 <= p <= q");
    const double mu = spec.mean();
    const double norm_p = spec.abs_moment(p, mu).value;
    const double norm_q = spec.abs_moment(q, mu).value;
    const double measured = norm_q / gamma_pow(q + 1.0, 1.0 / q);
    const double upper = 2.0 * norm_p / gamma_pow(p + 1.0, 1.0 / p);
    return make_bound_report("moment_comparison_general", std::nullopt, measured, upper,
                             1e-9 * std::max(1.0, upper), {{"p", p}, {"q", q}});
}

double delta_p(const DistributionSpec& spec, double p) {
    if (p == 2.0)
        return -0.5 * std::log(2.0);
    const double norm2 = spec.abs_moment(2.0, 0.0).value;
    const double norm_p = spec.abs_moment(p, 0.0).value;
    return std::log(gamma_pow(p + 1.0, 1.0 / p) / std::sqrt(2.0) * norm2 / norm_p);
}

BoundReport relative_entropy_bound(const DistributionSpec& spec, double p, int grid_n) {
    require_log_concave(spec, "relative_entropy_bound");
    if (std::abs(spec.mean()) > 1e-12)
        throw std::invalid_argument("relative_entropy_bound: requires a zero-mean spec");
    if (!spec.symmetric() && !(p >= 1.0))
        throw std::domain_error("relative_entropy_bound: non-symmetric specs require p >= 1");

    const double measured = kl_to_gaussian(default_grid(spec, grid_n));
    const double upper = (p == 2.0) ? 0.5 * std::log(kPiE / 2.0)
                                    : 0.5 * std::log(kPiE) + delta_p(spec, p);
    return make_bound_report("relative_entropy", 0.0, measured, upper, 1e-5, {{"p", p}});
}

KpbCurve kpb_F(const DistributionSpec& spec, const std::vector<double>& r_grid,
               KpbConvention convention) {
    require_symmetric_log_concave(spec, "kpb_F");
    const double scale = convention == KpbConvention::conditional ? 2.0 : 1.0;
    auto half_line_density = [&](double t) { return scale * spec.pdf(t); };

    KpbCurve curve;
    curve.points.reserve(r_grid.size());
    QuadratureSettings settings;
    for (double r : r_grid) {
        if (!(r > -1.0 + 1e-3 - 1e-15))
            throw std::domain_error("kpb_F: grid values must exceed -1 + 1e-3");
        double integral;
        try {
            integral = integrate_power_weighted(half_line_density, r, settings);
        } catch (const AccuracyError& e) {
            throw AccuracyError("kpb_F: quadrature failed near r = " + std::to_string(r),
                                e.best_estimate(), e.error_bound());
        }
        curve.points.push_back({r, integral / std::exp(log_gamma(r + 1.0))});
    }
    // Layer-cake identity: F(-1) equals the density at 0.
    curve.at_minus_one = scale * spec.pdf(0.0);
    return curve;
}

double entropy_lower_gamma_concave(const DistributionSpec& spec, double p) {
    if (!spec.gamma_concave() || !spec.symmetric())
        throw std::invalid_argument(
            "entropy_lower_gamma_concave: requires a symmetric gamma-concave spec");
    const double g = spec.concavity_gamma();
    const double a = -1.0 / g;
    if (!(p > -1.0 && p < a - 1.0))
        throw std::domain_error("entropy_lower_gamma_concave: requires p in (-1, -1 - 1/gamma)");

    const double norm_p = spec.abs_moment(p, 0.0).value;
    const double log_factor = (1.0 + 1.0 / p) * log_gamma(a - 1.0) - log_gamma(a) -
                              log_gamma(a - (p + 1.0)) / p;
    return std::log(2.0 * norm_p) - log_gamma(p + 1.0) / p + log_factor;
}

} // namespace lcb
