#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catalog.hpp"
#include "lcb/capacity.hpp"

using namespace lcb;

namespace {
constexpr double kPiE = std::numbers::pi * std::numbers::e;
constexpr double kHalfBitNats = 0.5 * 0.6931471805599453;
} // namespace

TEST_SUITE("capacity") {

TEST_CASE("Gaussian channel capacity") {
    CHECK(gaussian_capacity(1.0, 1.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-13));
    CHECK(gaussian_capacity(1.0, 3.0) == doctest::Approx(std::log(2.0)).epsilon(1e-13));
    CHECK(gaussian_capacity(2.0, 1e-12) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK_THROWS_AS(gaussian_capacity(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(gaussian_capacity(1.0, -1.0), std::domain_error);
}

TEST_CASE("Blahut-Arimoto reproduces the AWGN closed form") {
    const auto grid = default_grid(DistributionSpec::gaussian(1.0), 256);
    const auto res = blahut_arimoto_capacity_detailed(grid, 1.0, 6.0 * std::sqrt(2.0));
    CHECK(res.capacity_nats == doctest::Approx(0.5 * std::log(2.0)).epsilon(0.01));
    CHECK(res.achieved_power <= 1.0 * (1.0 + 1e-6));
    CHECK(res.boundary_mass < 1e-6);
}

TEST_CASE("Blahut-Arimoto respects the capacity chain for Laplace noise") {
    const auto noise = DistributionSpec::laplace(1.0 / std::sqrt(2.0));
    const auto grid = default_grid(noise, 256);
    const double c = blahut_arimoto_capacity(grid, 1.0, 6.0 * std::sqrt(2.0));
    CHECK(c >= 0.5 * std::log(2.0) - 0.01);
    CHECK(c <= 0.5 * std::log(2.0) + 0.5 * std::log(kPiE / 2.0) + 0.01);
}

TEST_CASE("vanishing power gives vanishing capacity") {
    const auto grid = default_grid(DistributionSpec::gaussian(1.0), 256);
    CHECK(blahut_arimoto_capacity(grid, 1e-3, 6.0) <= 0.01);
}

TEST_CASE("Gaussian-input mutual information") {
    const auto grid = default_grid(DistributionSpec::gaussian(1.0), 512);
    CHECK(gaussian_input_mi(grid, 1.0) == doctest::Approx(0.5 * std::log(2.0)).epsilon(0.01));

    const auto lap_grid = default_grid(DistributionSpec::laplace(1.0 / std::sqrt(2.0)), 256);
    const double mi = gaussian_input_mi(lap_grid, 1.0);
    const double ba = blahut_arimoto_capacity(lap_grid, 1.0, 6.0 * std::sqrt(2.0));
    CHECK(mi <= ba + 0.01);
    CHECK(ba - mi <= kHalfBitNats + 0.01);
}

TEST_CASE("scalar capacity gap report") {
    const auto rep = capacity_gap_bound(DistributionSpec::laplace(1.0), 2.0, 256);
    CHECK(rep.passed);
    CHECK(*rep.upper - *rep.lower == doctest::Approx(0.5 * std::log(kPiE / 2.0)).epsilon(1e-12));

    const auto uni = capacity_gap_bound(DistributionSpec::uniform(2.0), 0.5, 256);
    CHECK(uni.passed);

    CHECK_THROWS_AS(capacity_gap_bound(DistributionSpec::extended_cauchy(-0.2), 1.0),
                    std::invalid_argument);
}

TEST_CASE("vector capacity chain") {
    const auto iso = capacity_vector_bound(
        ProductDistribution::of(std::vector<DistributionSpec>(
            3, DistributionSpec::uniform(std::sqrt(12.0)))),
        1.0);
    CHECK(iso.passed);
    CHECK(iso.parameters.at("ratio_term") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(iso.measured ==
          doctest::Approx(1.5 * std::log(2.0 * kPiE * c_constant(3, true))).epsilon(1e-12));

    const auto aniso = capacity_vector_bound(
        ProductDistribution::of(
            {DistributionSpec::gaussian(1.0), DistributionSpec::gaussian(2.0)}),
        1.0);
    CHECK(aniso.parameters.at("ratio_term") == doctest::Approx(3.5 / 3.0).epsilon(1e-12));

    // scalar reduction: the cap collapses onto 0.5 ln(pi e / 2)
    const auto scalar = capacity_vector_bound(
        ProductDistribution::of({DistributionSpec::laplace(1.0)}), 2.0);
    CHECK(scalar.measured == doctest::Approx(0.5 * std::log(kPiE / 2.0)).epsilon(1e-12));

    CHECK_THROWS_AS(capacity_vector_bound(ProductDistribution::of(
                                              {DistributionSpec::exponential(1.0)}),
                                          1.0),
                    std::invalid_argument);
}

TEST_CASE("joint source-channel converse floor") {
    CHECK(jscc_converse(1.0, 0.0) == doctest::Approx(0.054849324344418524).epsilon(1e-10));
    CHECK(jscc_converse(1.0, 3.0) == doctest::Approx(0.013712331086104631).epsilon(1e-10));
    CHECK(jscc_converse(4.0, 3.0) == doctest::Approx(4.0 * jscc_converse(1.0, 3.0)).epsilon(1e-13));
    // never exceeds the matched Gaussian benchmark
    for (double snr : {0.0, 1.0, 10.0})
        CHECK(jscc_converse(1.0, snr) <= jscc_gaussian_opta(1.0, snr));
    CHECK_THROWS_AS(jscc_converse(-1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(jscc_converse(1.0, -0.5), std::domain_error);
}

TEST_CASE("capacity point bundles the chain") {
    const auto pt = capacity_point(DistributionSpec::uniform(std::sqrt(12.0)), 1.0, 256);
    REQUIRE(pt.ba_nats.has_value());
    REQUIRE(pt.gaussian_input_mi_nats.has_value());
    CHECK(*pt.ba_nats >= pt.lower_gaussian_nats - 0.01);
    CHECK(*pt.ba_nats <= pt.upper_nats + 0.02);
    CHECK(*pt.ba_nats - *pt.gaussian_input_mi_nats >= -0.01);
    CHECK(*pt.ba_nats - *pt.gaussian_input_mi_nats <= kHalfBitNats + 0.01);
}

} // TEST_SUITE
