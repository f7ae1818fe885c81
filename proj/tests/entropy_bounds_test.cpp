#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catalog.hpp"
#include "lcb/entropy_bounds.hpp"

using namespace lcb;

namespace {
constexpr double kPiE = std::numbers::pi * std::numbers::e;
} // namespace

TEST_SUITE("entropy_bounds") {

TEST_CASE("alpha constant") {
    CHECK(alpha(2.0) == doctest::Approx(std::sqrt(2.0 * kPiE)).epsilon(1e-13));
    CHECK(alpha(1.0) == doctest::Approx(2.0 * std::numbers::e).epsilon(1e-13));
    CHECK(alpha(4.0) == doctest::Approx(3.2918474246138420).epsilon(1e-12));
    CHECK_THROWS_AS(alpha(0.0), std::domain_error);
    CHECK_THROWS_AS(alpha(-1.0), std::domain_error);
}

TEST_CASE("maximum-entropy upper bound") {
    for (double sigma : {0.5, 1.0, 2.0})
        CHECK(entropy_upper(DistributionSpec::gaussian(sigma), 2.0) ==
              doctest::Approx(0.5 * std::log(2.0 * kPiE * sigma * sigma)).epsilon(1e-13));
    const auto gg = DistributionSpec::generalized_gaussian(3.0, 0.8);
    CHECK(entropy_upper(gg, 3.0) == doctest::Approx(gg.entropy()).epsilon(1e-10));
    CHECK(entropy_upper(DistributionSpec::uniform(2.0), 2.0) ==
          doctest::Approx(0.8696323888706179).epsilon(1e-12));
}

TEST_CASE("symmetric moment lower bound") {
    CHECK(entropy_lower_symmetric(DistributionSpec::laplace(1.0), 2.0) ==
          doctest::Approx(std::log(2.0 * std::sqrt(2.0))).epsilon(1e-13));
    CHECK(entropy_lower_symmetric(DistributionSpec::gaussian(1.0), 2.0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-13));
    // the uniform law attains the bound in the p -> -1 limit
    const auto uni = DistributionSpec::uniform(2.0);
    const double near_limit = entropy_lower_symmetric(uni, -0.999);
    CHECK(std::abs(near_limit - uni.entropy()) <= 1e-3);
    CHECK(near_limit < uni.entropy());
    CHECK_THROWS_AS(entropy_lower_symmetric(DistributionSpec::exponential(1.0), 2.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(entropy_lower_symmetric(DistributionSpec::extended_cauchy(-0.2), 2.0),
                    std::invalid_argument);
}

TEST_CASE("general centered lower bound") {
    const auto expo = DistributionSpec::exponential(1.0);
    CHECK(entropy_lower_general(expo, 2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    // E|X - 1| = 2/e for a unit-rate exponential
    CHECK(entropy_lower_general(expo, 1.0) ==
          doctest::Approx(std::log(4.0 / std::numbers::e)).epsilon(1e-9));
    CHECK(entropy_lower_general(DistributionSpec::gaussian(2.0), 2.0) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-13));
    CHECK_THROWS_AS(entropy_lower_general(expo, 0.5), std::domain_error);
}

TEST_CASE("pointwise density bound") {
    const auto lap = density_max_bound(DistributionSpec::laplace(1.0), 2.0);
    CHECK(lap.passed);
    // the grid maximum sits within one cell of the kinked peak
    CHECK(lap.measured == doctest::Approx(0.5).epsilon(1e-2));
    CHECK(*lap.upper == doctest::Approx(0.5).epsilon(1e-12)); // Laplace saturates it

    const auto uni = density_max_bound(DistributionSpec::uniform(2.0), 2.0);
    CHECK(uni.passed);
    CHECK(*uni.upper == doctest::Approx(std::sqrt(6.0) / 2.0).epsilon(1e-12));

    const auto gau = density_max_bound(DistributionSpec::gaussian(1.0), 2.0);
    CHECK(gau.passed);
    CHECK(gau.measured == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-4));
    CHECK(*gau.upper == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("moment comparison, symmetric") {
    // Laplace attains equality at every order pair
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1.0, 3.0}, {0.5, 2.0}, {-0.5, 5.0}}) {
        const auto rep = moment_comparison_symmetric(DistributionSpec::laplace(1.0), p, q);
        CHECK(rep.passed);
        CHECK(rep.measured == doctest::Approx(*rep.upper).epsilon(1e-10));
    }
    const auto uni = moment_comparison_symmetric(DistributionSpec::uniform(2.0), 1.0, 2.0);
    CHECK(uni.passed);
    CHECK(uni.measured < *uni.upper);
    const auto same = moment_comparison_symmetric(DistributionSpec::gaussian(1.0), 2.0, 2.0);
    CHECK(same.measured == doctest::Approx(*same.upper).epsilon(1e-13));
    CHECK_THROWS_AS(moment_comparison_symmetric(DistributionSpec::gaussian(1.0), 3.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("moment comparison, general") {
    const auto expo = moment_comparison_general(DistributionSpec::exponential(1.0), 1.0, 2.0);
    CHECK(expo.passed);
    CHECK(expo.measured == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(*expo.upper == doctest::Approx(4.0 / std::numbers::e).epsilon(1e-9));
    CHECK(moment_comparison_general(DistributionSpec::laplace(1.0), 1.0, 3.0).passed);
    CHECK_THROWS_AS(moment_comparison_general(DistributionSpec::exponential(1.0), 0.5, 2.0),
                    std::invalid_argument);
}

TEST_CASE("delta_p branches") {
    CHECK(delta_p(DistributionSpec::gaussian(1.0), 2.0) ==
          doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-13));
    CHECK(delta_p(DistributionSpec::laplace(1.0), 1.0) == doctest::Approx(0.0).epsilon(1e-13));
    // uniform: Delta_p -> -0.5 ln 6 as p -> -1
    CHECK(delta_p(DistributionSpec::uniform(2.0), -0.999) ==
          doctest::Approx(-0.5 * std::log(6.0)).epsilon(1e-3));
}

TEST_CASE("relative entropy caps") {
    const auto gau = relative_entropy_bound(DistributionSpec::gaussian(1.0), 2.0);
    CHECK(gau.passed);
    CHECK(gau.measured == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(*gau.upper == doctest::Approx(0.5 * std::log(kPiE / 2.0)).epsilon(1e-13));

    const auto lap = relative_entropy_bound(DistributionSpec::laplace(1.0), 2.0);
    CHECK(lap.passed);
    CHECK(lap.measured == doctest::Approx(0.07236494292470009).epsilon(1e-4));

    // uniform attains the cap in the p -> -1 limit
    const auto uni = relative_entropy_bound(DistributionSpec::uniform(2.0), -0.9999, 8192);
    CHECK(uni.passed);
    CHECK(std::abs(*uni.upper - uni.measured) <= 1e-4);

    const auto expo = relative_entropy_bound(DistributionSpec::exponential(1.0).shifted(-1.0), 2.0);
    CHECK(expo.passed);

    CHECK_THROWS_AS(relative_entropy_bound(DistributionSpec::exponential(1.0), 2.0),
                    std::invalid_argument); // non-zero mean
    CHECK_THROWS_AS(
        relative_entropy_bound(DistributionSpec::exponential(1.0).shifted(-1.0), 0.5),
        std::domain_error); // general path needs p >= 1
}

TEST_CASE("property: D(X || G_X) is nonnegative on the catalog") {
    for (const auto& spec : lcb::testing::zero_mean_log_concave())
        CHECK(kl_to_gaussian(default_grid(spec)) >= -1e-6);
}

TEST_CASE("moment functional of the exponential profile is constant") {
    // the conditional |X| density of Laplace(1) is e^{-x}: F(r) = 1
    std::vector<double> grid{-0.9, -0.5, 0.0, 0.5, 1.0, 2.0, 3.5, 5.0};
    const auto curve = kpb_F(DistributionSpec::laplace(1.0), grid, KpbConvention::conditional);
    for (const auto& pt : curve.points) CHECK(pt.value == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(curve.at_minus_one == doctest::Approx(1.0).epsilon(1e-13));

    const auto half = kpb_F(DistributionSpec::laplace(1.0), grid, KpbConvention::half_density);
    for (const auto& pt : half.points) CHECK(pt.value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(half.at_minus_one == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("moment functional spot values") {
    const auto gauss = kpb_F(DistributionSpec::gaussian(1.0), {0.0}, KpbConvention::conditional);
    CHECK(gauss.points[0].value == doctest::Approx(1.0).epsilon(1e-9)); // half-line mass of |X|
    const auto uni = kpb_F(DistributionSpec::uniform(2.0), {1.0}, KpbConvention::conditional);
    CHECK(uni.points[0].value == doctest::Approx(0.5).epsilon(1e-8));
    CHECK_THROWS_AS(kpb_F(DistributionSpec::gaussian(1.0), {-0.9999}), std::domain_error);
    CHECK_THROWS_AS(kpb_F(DistributionSpec::exponential(1.0), {1.0}), std::invalid_argument);
}

TEST_CASE("property: the moment functional is log-concave in r") {
    std::vector<double> grid;
    for (double r = -0.9; r <= 5.0 + 1e-9; r += 0.245) grid.push_back(r);
    for (const auto& spec : lcb::testing::symmetric_log_concave()) {
        const auto curve = kpb_F(spec, grid, KpbConvention::half_density);
        for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) {
            const double mid = curve.points[i].value;
            CHECK(mid * mid >=
                  curve.points[i - 1].value * curve.points[i + 1].value * (1.0 - 1e-8));
        }
    }
}

TEST_CASE("gamma-concave lower bound") {
    // equivalence of the general formula and the second-moment corollary
    const auto ec4 = DistributionSpec::extended_cauchy(-0.25);
    const double g = -0.25;
    const double norm2sq = std::pow(ec4.abs_moment(2.0).value, 2.0);
    const double corollary = 0.5 * std::log(2.0 * norm2sq * (2.0 * g + 1.0) * (3.0 * g + 1.0) /
                                            ((g + 1.0) * (g + 1.0)));
    CHECK(entropy_lower_gamma_concave(ec4, 2.0) == doctest::Approx(corollary).epsilon(1e-10));
    CHECK(corollary == doctest::Approx(-0.6460710206379661).epsilon(1e-12));

    // the bound is honored by the law itself
    for (auto [gamma, p] : std::vector<std::pair<double, double>>{
             {-0.05, 9.0}, {-0.1, 4.0}, {-0.2, 1.5}, {-0.5, 0.5}}) {
        const auto ec = DistributionSpec::extended_cauchy(gamma);
        CHECK(ec.entropy() >= entropy_lower_gamma_concave(ec, p) - 1e-8);
    }

    // continuity onto the log-concave bound as gamma -> 0: the constant
    // factor deviates by (1+p)|gamma|/2 + O(gamma^2), about 5.5e-4 here
    const auto ec0 = DistributionSpec::extended_cauchy(-1e-3);
    const double p0 = 0.1;
    const double log_concave_form =
        std::log(2.0 * ec0.abs_moment(p0).value) - log_gamma(p0 + 1.0) / p0;
    CHECK(std::abs(entropy_lower_gamma_concave(ec0, p0) - log_concave_form) <= 1e-3);

    CHECK_THROWS_AS(entropy_lower_gamma_concave(DistributionSpec::extended_cauchy(-0.5), 1.5),
                    std::domain_error); // p must stay below -1 - 1/gamma = 1
    CHECK_THROWS_AS(entropy_lower_gamma_concave(DistributionSpec::gaussian(1.0), 0.5),
                    std::invalid_argument);
}

TEST_CASE("gamma identity behind the second-moment corollary") {
    for (int k = 1; k <= 20; ++k) {
        const double g = -1.0 / 3.0 + k * (1.0 / 3.0) / 21.0;
        const double a = -1.0 / g;
        const double lhs =
            std::exp(3.0 * log_gamma(a - 1.0) - 2.0 * log_gamma(a) - log_gamma(a - 3.0));
        const double rhs = (a - 2.0) * (a - 3.0) / ((a - 1.0) * (a - 1.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("property: entropy sandwich across the catalog") {
    for (const auto& spec : lcb::testing::symmetric_log_concave()) {
        const double h = spec.entropy();
        for (double p : {-0.5, 0.5, 1.0, 2.0, 3.0, 5.0}) {
            CHECK(entropy_lower_symmetric(spec, p) <= h + 1e-6);
            if (p > 0.0) CHECK(h <= entropy_upper(spec, p) + 1e-6);
        }
    }
}

TEST_CASE("the sandwich gap at p = 1 is exactly one nat") {
    const double gap = std::log(alpha(1.0)) - std::log(2.0) + log_gamma(2.0);
    CHECK(gap == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("the sandwich gap blows up monotonically as p -> 0+") {
    auto gap = [](double p) {
        return std::log(alpha(p)) - std::log(2.0) + log_gamma(p + 1.0) / p;
    };
    double prev = gap(1.0);
    for (double p : {0.5, 0.2, 0.1, 0.05, 0.02}) {
        const double g = gap(p);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("the symmetric comparison implies the general one") {
    for (const auto& spec : lcb::testing::symmetric_log_concave()) {
        const auto rep = moment_comparison_general(spec, 1.0, 2.5);
        CHECK(rep.passed);
        // centered moments coincide with raw ones at zero mean, so the
        // factor-2 bound has at least a factor of 2 to spare
        CHECK(rep.measured <= 0.5 * *rep.upper * (1.0 + 1e-12));
    }
}

} // TEST_SUITE
