#include "lcb/vector_bounds.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lcb {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;

} // namespace

ProductDistribution::ProductDistribution(std::vector<DistributionSpec> components,
                                         bool unconditional, bool permutation_invariant)
    : components_(std::move(components)),
      unconditional_(unconditional),
      permutation_invariant_(permutation_invariant) {
    if (components_.empty())
        throw std::invalid_argument("ProductDistribution: needs at least one component");
    if (unconditional_)
        for (const auto& c : components_)
            if (!c.symmetric())
                throw std::invalid_argument(
                    "ProductDistribution: unconditional requires symmetric components");
    if (permutation_invariant_)
        for (const auto& c : components_)
            if (!(c == components_.front()))
                throw std::invalid_argument(
                    "ProductDistribution: permutation invariance requires identical components");
}

ProductDistribution ProductDistribution::of(std::vector<DistributionSpec> components) {
    bool uncond = true, perm = true;
    for (const auto& c : components) {
        uncond = uncond && c.symmetric();
        perm = perm && (c == components.front());
    }
    return {std::move(components), uncond, perm};
}

double ProductDistribution::entropy() const {
    double h = 0.0;
    for (const auto& c : components_) h += c.entropy();
    return h;
}

double ProductDistribution::covariance_determinant() const {
    double det = 1.0;
    for (const auto& c : components_) det *= c.variance();
    return det;
}

double ProductDistribution::mean_square_norm() const {
    double s = 0.0;
    for (const auto& c : components_) {
        const double mu = c.mean();
        s += c.variance() + mu * mu;
    }
    return s;
}

bool ProductDistribution::isotropic(double rel_tol) const {
    const double v0 = components_.front().variance();
    for (const auto& c : components_)
        if (std::abs(c.variance() - v0) > rel_tol * v0) return false;
    return true;
}

double c_constant(int n, bool unconditional) {
    if (n < 2)
        throw std::domain_error("c_constant: stated for n >= 2");
    const double nn = static_cast<double>(n);
    const double general = kE * kE * nn * nn / (4.0 * std::sqrt(2.0) * (nn + 2.0));
    if (!unconditional) return general;
    return std::min(general, kE * kE / 2.0);
}

BoundReport vector_entropy_lower(const ProductDistribution& pd) {
    for (const auto& c : pd.components())
        if (!c.symmetric() || !c.log_concave())
            throw std::invalid_argument(
                "vector_entropy_lower: components must be symmetric log-concave");
    const int n = pd.n();
    const double c_n = c_constant(n, pd.unconditional());
    const double det = pd.covariance_determinant();
    const double lower = 0.5 * n * std::log(std::pow(det, 1.0 / n) / c_n);
    const double measured = pd.entropy();
    return make_bound_report("vector_entropy_lower", lower, measured, std::nullopt, 1e-9,
                             {{"n", static_cast<double>(n)}, {"c_n", c_n}});
}

IsotropyReport isotropy(const ProductDistribution& pd) {
    const auto& comps = pd.components();
    const double v0 = comps.front().variance();
    for (std::size_t i = 1; i < comps.size(); ++i) {
        const double vi = comps[i].variance();
        if (std::abs(vi - v0) > 1e-9 * v0) {
            std::ostringstream msg;
            msg << "isotropy: components 0 and " << i << " have different variances (" << v0
                << " vs " << vi << ")";
            throw std::invalid_argument(msg.str());
        }
    }
    double f0 = 1.0;
    for (const auto& c : comps) f0 *= c.pdf(0.0);
    const int n = pd.n();
    IsotropyReport rep;
    rep.m_squared = v0;
    rep.density_at_zero = f0;
    rep.ell_squared = std::pow(f0, 2.0 / n) * v0;
    rep.n = n;
    return rep;
}

BoundReport extend_iso_lower(const ProductDistribution& pd, double p) {
    if (!pd.unconditional())
        throw std::invalid_argument("extend_iso_lower: requires an unconditional product");
    if (!pd.isotropic())
        throw std::invalid_argument("extend_iso_lower: requires an isotropic product");
    const int n = pd.n();
    const double c = pd.permutation_invariant() ? kE : kE * std::sqrt(6.0);
    double lower = -std::numeric_limits<double>::infinity();
    for (const auto& comp : pd.components()) {
        const double norm_p = comp.abs_moment(p, 0.0).value;
        lower = std::max(lower,
                         n * std::log(2.0 * norm_p / gamma_pow(p + 1.0, 1.0 / p) / c));
    }
    return make_bound_report("extend_iso_lower", lower, pd.entropy(), std::nullopt, 1e-9,
                             {{"n", static_cast<double>(n)}, {"p", p}, {"c", c}});
}

BoundReport vector_relative_entropy_bound(const ProductDistribution& pd) {
    for (const auto& c : pd.components())
        if (!c.symmetric() || !c.log_concave())
            throw std::invalid_argument(
                "vector_relative_entropy_bound: components must be symmetric log-concave");
    const int n = pd.n();
    double divergence = 0.0;
    for (const auto& c : pd.components())
        divergence += 0.5 * std::log(kTwoPiE * c.variance()) - c.entropy();
    const double upper = 0.5 * n * std::log(kTwoPiE * c_constant(n, pd.unconditional()));
    return make_bound_report("vector_relative_entropy", 0.0, divergence, upper, 1e-9,
                             {{"n", static_cast<double>(n)}});
}

} // namespace lcb
