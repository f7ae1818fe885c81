#include "lcb/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lcb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryMargin = 1e-3; // paper ranges are open intervals

double ec_exponent(double gamma) { return 1.0 - 1.0 / gamma; }

// Normalization of 1 / (1 + |x|^m) on the line: C = m sin(pi/m) / (2 pi).
double ec_normalization(double m) { return m * std::sin(kPi / m) / (2.0 * kPi); }

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

DistributionSpec::DistributionSpec(Family f, double p1, double p2, double shift)
    : family_(f), p1_(p1), p2_(p2), shift_(shift) {}

DistributionSpec DistributionSpec::gaussian(double sigma) {
    require(sigma > 0.0, "gaussian: sigma must be positive");
    return {Family::gaussian, sigma, 0.0, 0.0};
}

DistributionSpec DistributionSpec::laplace(double b) {
    require(b > 0.0, "laplace: scale must be positive");
    return {Family::laplace, b, 0.0, 0.0};
}

DistributionSpec DistributionSpec::uniform(double width) {
    require(width > 0.0, "uniform: width must be positive");
    return {Family::uniform, width, 0.0, 0.0};
}

DistributionSpec DistributionSpec::exponential(double lambda) {
    require(lambda > 0.0, "exponential: rate must be positive");
    return {Family::exponential, lambda, 0.0, 0.0};
}

DistributionSpec DistributionSpec::generalized_gaussian(double r, double d) {
    require(r >= 1.0, "generalized_gaussian: requires r >= 1");
    require(d > 0.0, "generalized_gaussian: requires d > 0");
    return {Family::generalized_gaussian, r, d, 0.0};
}

DistributionSpec DistributionSpec::extended_cauchy(double gamma) {
    require(gamma > -1.0 && gamma < 0.0, "extended_cauchy: requires gamma in (-1, 0)");
    return {Family::extended_cauchy, gamma, 0.0, 0.0};
}

DistributionSpec DistributionSpec::shifted(double delta) const {
    DistributionSpec out = *this;
    out.shift_ += delta;
    return out;
}

DistributionSpec DistributionSpec::scaled(double a) const {
    require(a > 0.0, "scaled: factor must be positive");
    switch (family_) {
        case Family::gaussian: return {family_, p1_ * a, 0.0, shift_ * a};
        case Family::laplace: return {family_, p1_ * a, 0.0, shift_ * a};
        case Family::uniform: return {family_, p1_ * a, 0.0, shift_ * a};
        case Family::exponential: return {family_, p1_ / a, 0.0, shift_ * a};
        case Family::generalized_gaussian:
            return {family_, p1_, p2_ * std::pow(a, p1_), shift_ * a};
        case Family::extended_cauchy:
            throw std::invalid_argument("scaled: extended Cauchy is not closed under scaling");
    }
    throw std::logic_error("unreachable");
}

bool DistributionSpec::symmetric() const noexcept {
    return shift_ == 0.0 && family_ != Family::exponential;
}

bool DistributionSpec::log_concave() const noexcept {
    return family_ != Family::extended_cauchy;
}

bool DistributionSpec::gamma_concave() const noexcept {
    return family_ == Family::extended_cauchy;
}

double DistributionSpec::concavity_gamma() const {
    if (family_ != Family::extended_cauchy)
        throw std::domain_error("concavity_gamma: only extended Cauchy carries a gamma");
    return p1_;
}

double DistributionSpec::pdf(double x) const {
    const double t = x - shift_;
    switch (family_) {
        case Family::gaussian: {
            const double s = p1_;
            return std::exp(-0.5 * t * t / (s * s)) / (s * std::sqrt(2.0 * kPi));
        }
        case Family::laplace:
            return std::exp(-std::abs(t) / p1_) / (2.0 * p1_);
        case Family::uniform:
            return (std::abs(t) <= 0.5 * p1_) ? 1.0 / p1_ : 0.0;
        case Family::exponential:
            return t >= 0.0 ? p1_ * std::exp(-p1_ * t) : 0.0;
        case Family::generalized_gaussian: {
            const double r = p1_, d = p2_;
            const double c = std::pow(r, 1.0 - 1.0 / r) /
                             (2.0 * std::exp(log_gamma(1.0 / r)) * std::pow(d, 1.0 / r));
            return c * std::exp(-std::pow(std::abs(t), r) / (r * d));
        }
        case Family::extended_cauchy: {
            const double m = ec_exponent(p1_);
            return ec_normalization(m) / (1.0 + std::pow(std::abs(t), m));
        }
    }
    throw std::logic_error("unreachable");
}

double DistributionSpec::support_lo() const {
    switch (family_) {
        case Family::uniform: return shift_ - 0.5 * p1_;
        case Family::exponential: return shift_;
        default: return -kInf;
    }
}

double DistributionSpec::support_hi() const {
    switch (family_) {
        case Family::uniform: return shift_ + 0.5 * p1_;
        default: return kInf;
    }
}

double DistributionSpec::mean() const {
    return family_ == Family::exponential ? shift_ + 1.0 / p1_ : shift_;
}

double DistributionSpec::variance() const {
    switch (family_) {
        case Family::gaussian: return p1_ * p1_;
        case Family::laplace: return 2.0 * p1_ * p1_;
        case Family::uniform: return p1_ * p1_ / 12.0;
        case Family::exponential: return 1.0 / (p1_ * p1_);
        case Family::generalized_gaussian: {
            const double r = p1_, d = p2_;
            return std::pow(r * d, 2.0 / r) *
                   std::exp(log_gamma(3.0 / r) - log_gamma(1.0 / r));
        }
        case Family::extended_cauchy: {
            const double m = ec_exponent(p1_);
            if (m <= 3.0)
                throw std::domain_error(
                    "variance: extended Cauchy needs gamma > -1/2 for a finite variance");
            return std::sin(kPi / m) / std::sin(3.0 * kPi / m);
        }
    }
    throw std::logic_error("unreachable");
}

double DistributionSpec::std_dev() const { return std::sqrt(variance()); }

double DistributionSpec::natural_scale() const {
    switch (family_) {
        case Family::gaussian: return p1_;
        case Family::laplace: return p1_;
        case Family::uniform: return std_dev();
        case Family::exponential: return 1.0 / p1_;
        case Family::generalized_gaussian: return std_dev();
        case Family::extended_cauchy: return std_dev();
    }
    throw std::logic_error("unreachable");
}

bool DistributionSpec::has_closed_form(double center) const {
    return center == shift_;
}

// E|X - shift|^p from the moment table; every entry reduces to the Gamma
// integral int_0^inf x^s e^{-x} dx or to int_0^inf dx / (1 + x^m).
double DistributionSpec::closed_form_abs_moment_p(double p) const {
    switch (family_) {
        case Family::gaussian:
            return std::pow(p1_, p) * std::pow(2.0, 0.5 * p) *
                   std::exp(log_gamma(0.5 * (p + 1.0)) - 0.5 * std::log(kPi));
        case Family::laplace:
            return std::pow(p1_, p) * std::exp(log_gamma(p + 1.0));
        case Family::uniform:
            return std::pow(0.5 * p1_, p) / (p + 1.0);
        case Family::exponential:
            return std::exp(log_gamma(p + 1.0)) / std::pow(p1_, p);
        case Family::generalized_gaussian: {
            const double r = p1_, d = p2_;
            return std::pow(r * d, p / r) *
                   std::exp(log_gamma((p + 1.0) / r) - log_gamma(1.0 / r));
        }
        case Family::extended_cauchy: {
            const double m = ec_exponent(p1_);
            return std::sin(kPi / m) / std::sin(kPi * (p + 1.0) / m);
        }
    }
    throw std::logic_error("unreachable");
}

MomentValue DistributionSpec::abs_moment(double p, double center) const {
    if (!(p > -1.0))
        throw std::domain_error("abs_moment: requires p > -1");
    if (family_ == Family::extended_cauchy) {
        const double limit = -1.0 / p1_;
        if (!(p < limit - kBoundaryMargin + 1e-15)) {
            std::ostringstream msg;
            msg << "abs_moment: extended Cauchy moment finite only for p in (-1, " << limit
                << "); p within 1e-3 of the boundary is rejected";
            throw std::domain_error(msg.str());
        }
    }
    if (has_closed_form(center)) {
        const double ep = closed_form_abs_moment_p(p);
        return {p, std::pow(ep, 1.0 / p), center, MomentValue::Method::closed_form};
    }
    return abs_moment_via_quadrature(p, center);
}

MomentValue DistributionSpec::abs_moment_via_quadrature(double p, double center) const {
    if (!(p > -1.0))
        throw std::domain_error("abs_moment: requires p > -1");
    if (p < -1.0 + kBoundaryMargin - 1e-15)
        throw std::domain_error("abs_moment: quadrature rejects p within 1e-3 of -1");
    if (!has_closed_form(center) && p < 1.0)
        throw std::domain_error("abs_moment: off-center moments require p >= 1");

    QuadratureSettings settings;
    double ep;
    if (p < 2.0) {
        // Fold around the center; integrate_power_weighted absorbs the
        // |x - c|^p singularity for negative p.
        ep = integrate_power_weighted(
            [&](double t) { return pdf(center + t) + pdf(center - t); }, p, settings);
    } else {
        const double lo = support_lo(), hi = support_hi();
        auto f = [&](double x) { return std::pow(std::abs(x - center), p) * pdf(x); };
        if (center > lo && center < hi)
            ep = integrate(f, lo, center, settings) + integrate(f, center, hi, settings);
        else
            ep = integrate(f, lo, hi, settings);
    }
    return {p, std::pow(ep, 1.0 / p), center, MomentValue::Method::quadrature};
}

double DistributionSpec::entropy() const {
    switch (family_) {
        case Family::gaussian:
            return 0.5 * std::log(2.0 * kPi * std::numbers::e * p1_ * p1_);
        case Family::laplace:
            return 1.0 + std::log(2.0 * p1_);
        case Family::uniform:
            return std::log(p1_);
        case Family::exponential:
            return 1.0 - std::log(p1_);
        case Family::generalized_gaussian: {
            // h = -ln c + 1/r with c the density normalization.
            const double r = p1_, d = p2_;
            const double log_c = (1.0 - 1.0 / r) * std::log(r) - std::log(2.0) -
                                 log_gamma(1.0 / r) - std::log(d) / r;
            return -log_c + 1.0 / r;
        }
        case Family::extended_cauchy: {
            const double m = ec_exponent(p1_);
            const double c = ec_normalization(m);
            // h = -ln C + E ln(1 + |X|^m); deep in the tail |x|^m overflows,
            // so switch to the log-space form ln(1+u) u^{-1} ~ L e^{-L}.
            const double expected_log = 2.0 * integrate(
                [&](double x) {
                    const double log_u = x > 0.0 ? m * std::log(x) : -kInf;
                    if (log_u > 500.0) return c * log_u * std::exp(-log_u);
                    const double denom = 1.0 + std::pow(x, m);
                    return std::log(denom) * c / denom;
                },
                0.0, kInf);
            return -std::log(c) + expected_log;
        }
    }
    throw std::logic_error("unreachable");
}

double DistributionSpec::extent_for_mass(double mass_tol) const {
    require(mass_tol > 0.0 && mass_tol < 1.0, "extent_for_mass: tol in (0,1)");
    const double scale = natural_scale();
    double half_width;
    switch (family_) {
        case Family::gaussian:
            half_width = scale * (std::sqrt(2.0 * std::log(2.0 / mass_tol)) + 1.0);
            break;
        case Family::laplace:
            half_width = scale * std::log(1.0 / mass_tol);
            break;
        case Family::uniform:
            half_width = 0.5 * p1_;
            break;
        case Family::exponential:
            half_width = scale * (1.0 + std::log(1.0 / mass_tol));
            break;
        case Family::generalized_gaussian: {
            const double r = p1_, d = p2_;
            half_width = std::pow(r * d * (std::log(1.0 / mass_tol) + 4.0), 1.0 / r) + scale;
            break;
        }
        case Family::extended_cauchy: {
            // tail mass beyond A is ~ 2 C A^{1-m} / (m-1)
            const double m = ec_exponent(p1_);
            const double c = ec_normalization(m);
            half_width = 1.2 * std::pow(2.0 * c / ((m - 1.0) * mass_tol), 1.0 / (m - 1.0));
            break;
        }
        default:
            throw std::logic_error("unreachable");
    }
    return std::max(10.0, half_width / scale);
}

GridDensity DistributionSpec::to_grid(int n_points, double extent_scales) const {
    if (n_points < 64)
        throw std::invalid_argument("to_grid: need at least 64 points");
    if (!(extent_scales > 0.0))
        throw std::invalid_argument("to_grid: extent must be positive");

    double lo, hi;
    if (family_ == Family::uniform) {
        lo = support_lo();
        hi = support_hi();
    } else {
        const double half = extent_scales * natural_scale();
        lo = std::max(mean() - half, support_lo());
        hi = std::min(mean() + half, support_hi());
    }
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    std::vector<double> values(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        values[static_cast<std::size_t>(i)] = pdf(lo + step * i);

    if (family_ == Family::extended_cauchy) {
        double m = 0.0;
        for (int i = 0; i < n_points; ++i)
            m += ((i == 0 || i == n_points - 1) ? 0.5 : 1.0) * values[static_cast<std::size_t>(i)];
        m *= step;
        if (m < 1.0 - 1e-6)
            throw AccuracyError("to_grid: extended Cauchy extent captures less than 1 - 1e-6 mass",
                                m, 1.0 - m);
    }
    return GridDensity::normalized(lo, step, std::move(values));
}

GridDensity default_grid(const DistributionSpec& spec, int n_points) {
    return spec.to_grid(n_points, spec.extent_for_mass(1e-9));
}

namespace {

std::string format_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string DistributionSpec::to_string() const {
    std::string out;
    switch (family_) {
        case Family::gaussian: out = "gaussian:" + format_param(p1_); break;
        case Family::laplace: out = "laplace:" + format_param(p1_); break;
        case Family::uniform: out = "uniform:" + format_param(p1_); break;
        case Family::exponential: out = "exponential:" + format_param(p1_); break;
        case Family::generalized_gaussian:
            out = "gengauss:" + format_param(p1_) + "," + format_param(p2_);
            break;
        case Family::extended_cauchy: out = "cauchyext:" + format_param(p1_); break;
    }
    if (shift_ != 0.0) out += "@" + format_param(shift_);
    return out;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    double shift = 0.0;
    if (auto at = lower.find('@'); at != std::string::npos) {
        const std::string tail = lower.substr(at + 1);
        std::size_t used = 0;
        shift = std::stod(tail, &used);
        if (used != tail.size())
            throw std::invalid_argument("distribution spec: bad shift '" + tail + "'");
        lower.resize(at);
    }
    const auto colon = lower.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("distribution spec: expected family:param[,param][@shift]");
    const std::string family = lower.substr(0, colon);
    const std::string params = lower.substr(colon + 1);

    std::vector<double> vals;
    std::size_t pos = 0;
    while (pos <= params.size()) {
        const auto comma = params.find(',', pos);
        const std::string tok =
            params.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty())
            throw std::invalid_argument("distribution spec: empty parameter");
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size())
            throw std::invalid_argument("distribution spec: bad number '" + tok + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    auto expect = [&](std::size_t n) {
        if (vals.size() != n)
            throw std::invalid_argument("distribution spec: wrong parameter count for " + family);
    };

    DistributionSpec out = [&]() {
        if (family == "gaussian" || family == "normal") {
            expect(1);
            return gaussian(vals[0]);
        }
        if (family == "laplace") {
            expect(1);
            return laplace(vals[0]);
        }
        if (family == "uniform") {
            expect(1);
            return uniform(vals[0]);
        }
        if (family == "exponential" || family == "exp") {
            expect(1);
            return exponential(vals[0]);
        }
        if (family == "gengauss" || family == "gg") {
            expect(2);
            return generalized_gaussian(vals[0], vals[1]);
        }
        if (family == "cauchyext") {
            expect(1);
            return extended_cauchy(vals[0]);
        }
        throw std::invalid_argument("distribution spec: unknown family '" + family + "'");
    }();
    return shift == 0.0 ? out : out.shifted(shift);
}

bool DistributionSpec::operator==(const DistributionSpec& other) const {
    return family_ == other.family_ && p1_ == other.p1_ && p2_ == other.p2_ &&
           shift_ == other.shift_;
}

} // namespace lcb
