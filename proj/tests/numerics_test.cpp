#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "catalog.hpp"
#include "lcb/grid_density.hpp"
#include "lcb/numerics.hpp"

using namespace lcb;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLn2PiE = 1.4189385332046727; // 0.5 ln(2 pi e)
} // namespace

TEST_SUITE("numerics") {

TEST_CASE("log_gamma matches factorial and half-integer values") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    // Gamma(1/2) = sqrt(pi)
    CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-13));
    // Gamma(5) = 4! = 24
    CHECK(log_gamma(5.0) == doctest::Approx(3.1780538303479456).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-2.5), std::domain_error);
}

TEST_CASE("integrate handles finite and infinite intervals") {
    CHECK(integrate([](double) { return 1.0; }, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    CHECK(integrate([&](double x) { return inv_sqrt_2pi * std::exp(-0.5 * x * x); }, -kInf,
                    kInf) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate([](double x) { return x * std::exp(-x); }, 0.0, kInf) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrate is deterministic bit for bit") {
    auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
    const double a = integrate(f, -kInf, kInf);
    const double b = integrate(f, -kInf, kInf);
    CHECK(a == b);
}

TEST_CASE("integrate reports an accuracy error with its best estimate") {
    QuadratureSettings tight;
    tight.max_subdivisions = 2;
    bool threw = false;
    try {
        integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3) + 1e-14); }, 0.0, 1.0,
                  tight);
    } catch (const AccuracyError& e) {
        threw = true;
        CHECK(std::isfinite(e.best_estimate()));
        CHECK(e.error_bound() > 0.0);
    }
    CHECK(threw);
}

TEST_CASE("integrate_power_weighted absorbs the endpoint singularity") {
    // int_0^inf t^p e^{-t} dt = Gamma(p+1)
    for (double p : {-0.9, -0.5, 0.5, 2.0}) {
        const double expected = std::exp(log_gamma(p + 1.0));
        CHECK(integrate_power_weighted([](double t) { return std::exp(-t); }, p) ==
              doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("entropy of uniform grids") {
    std::vector<double> flat(1001, 1.0);
    GridDensity unit(0.0, 1.0 / 1000.0, flat);
    CHECK(entropy_of_grid(unit) == doctest::Approx(0.0).epsilon(1e-6));

    std::vector<double> half(1001, 0.5);
    GridDensity sym(-1.0, 2.0 / 1000.0, half);
    CHECK(entropy_of_grid(sym) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("entropy of a truncated standard Gaussian") {
    const auto g = DistributionSpec::gaussian(1.0).to_grid(4096, 10.0);
    CHECK(entropy_of_grid(g) == doctest::Approx(kHalfLn2PiE).epsilon(1e-5));
}

TEST_CASE("kl_to_gaussian on catalog grids") {
    CHECK(kl_to_gaussian(DistributionSpec::gaussian(1.0).to_grid(4096, 10.0)) ==
          doctest::Approx(0.0).epsilon(1e-5));
    // 0.5 ln(2 pi e / 12)
    CHECK(kl_to_gaussian(DistributionSpec::uniform(2.0).to_grid(4096, 10.0)) ==
          doctest::Approx(0.17648520831067259).epsilon(1e-5));
    // 0.5 ln(4 pi e) - (1 + ln 2)
    CHECK(kl_to_gaussian(DistributionSpec::laplace(1.0).to_grid(8192, 30.0)) ==
          doctest::Approx(0.07236494292470009).epsilon(1e-5));
}

TEST_CASE("convolution of two unit boxes is the unit triangle") {
    std::vector<double> ones(2049, 1.0);
    GridDensity box(0.0, 1.0 / 2048.0, ones);
    GridDensity tri = convolve(box, box);
    CHECK(tri.x_min() == doctest::Approx(0.0));
    CHECK(tri.x_max() == doctest::Approx(2.0).epsilon(1e-12));
    double peak = 0.0, peak_x = 0.0;
    for (std::size_t i = 0; i < tri.size(); ++i)
        if (tri.values()[i] > peak) {
            peak = tri.values()[i];
            peak_x = tri.x(i);
        }
    CHECK(peak == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(peak_x == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("convolution of Gaussians matches the closed-form sum") {
    const auto g1 = DistributionSpec::gaussian(1.0).to_grid(4096, 10.0);
    GridDensity sum = convolve(g1, g1);
    const auto exact = DistributionSpec::gaussian(std::sqrt(2.0));
    double linf = 0.0;
    for (std::size_t i = 0; i < sum.size(); ++i)
        linf = std::max(linf, std::abs(sum.values()[i] - exact.pdf(sum.x(i))));
    CHECK(linf <= 1e-5);
}

TEST_CASE("convolution with a narrow box is an approximate identity") {
    const auto f = DistributionSpec::gaussian(1.0).to_grid(8192, 10.0);
    const double step = f.step();
    const int w = 3; // box of 3 steps
    std::vector<double> narrow(static_cast<std::size_t>(w + 1), 1.0 / (w * step));
    GridDensity box(-0.5 * w * step, step, narrow);
    GridDensity out = convolve(f, box);
    double l1 = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i)
        l1 += std::abs(out.values()[i] - DistributionSpec::gaussian(1.0).pdf(out.x(i))) * step;
    CHECK(l1 <= 0.005);
}

TEST_CASE("convolve rejects mismatched steps") {
    std::vector<double> a(101, 1.0), b(101, 2.0);
    GridDensity fa(0.0, 0.01, a);
    GridDensity fb(0.0, 0.005, b);
    CHECK_THROWS_AS(convolve(fa, fb), std::invalid_argument);
}

TEST_CASE("grid moments match closed forms") {
    CHECK(moment_of_grid(DistributionSpec::uniform(2.0).to_grid(4096, 10.0), 2.0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
    CHECK(moment_of_grid(DistributionSpec::gaussian(1.0).to_grid(4096, 10.0), 1.0, 0.0) ==
          doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-5));
    CHECK(moment_of_grid(DistributionSpec::laplace(1.0).to_grid(8192, 30.0), 2.0, 0.0) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("grid moment near p = 0 uses the geometric-mean limit") {
    const auto g = DistributionSpec::gaussian(1.0).to_grid(4096, 10.0);
    // exp(E ln|Z|) = exp(-(gamma + ln 2)/2) for a standard Gaussian
    const double exact = 0.5298466544479000;
    CHECK(moment_of_grid(g, 0.0, 0.0) == doctest::Approx(exact).epsilon(1e-5));
    CHECK(moment_of_grid(g, 1e-9, 0.0) == doctest::Approx(exact).epsilon(1e-5));
}

TEST_CASE("property: grid entropy agrees with adaptive quadrature") {
    QuadratureSettings settings;
    for (const auto& spec : lcb::testing::zero_mean_log_concave()) {
        const auto grid = spec.to_grid(4096, 10.0);
        // Same truncated-and-renormalized density on both sides: the check
        // pits grid summation against adaptive quadrature, nothing else.
        const double mass =
            integrate([&](double x) { return spec.pdf(x); }, grid.x_min(), grid.x_max(), settings);
        const double h_quad = integrate(
            [&](double x) {
                const double v = spec.pdf(x);
                return v > 0.0 ? -v * std::log(v) : 0.0;
            },
            grid.x_min(), grid.x_max(), settings) / mass + std::log(mass);
        CHECK(entropy_of_grid(grid) == doctest::Approx(h_quad).epsilon(1e-5));
    }
}

TEST_CASE("property: convolution preserves symmetry") {
    const auto f = DistributionSpec::uniform(2.0).to_grid(512, 10.0);
    const auto gspec = DistributionSpec::laplace(1.0);
    const double step = f.step();
    const int half = static_cast<int>(std::ceil(12.0 / step));
    std::vector<double> gv(static_cast<std::size_t>(2 * half + 1));
    for (int i = -half; i <= half; ++i)
        gv[static_cast<std::size_t>(i + half)] = gspec.pdf(step * i);
    GridDensity g = GridDensity::normalized(-half * step, step, std::move(gv));
    GridDensity c = convolve(f, g);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
        CHECK(c.values()[i] == doctest::Approx(c.values()[n - 1 - i]).epsilon(1e-10));
}

TEST_CASE("property: convolution adds variances") {
    const auto f = DistributionSpec::gaussian(1.0).to_grid(4096, 12.0);
    const auto gspec = DistributionSpec::uniform(3.0);
    // A matching step keeps the pair convolvable.
    const double step = f.step();
    const int ng = static_cast<int>(std::floor(3.0 / step));
    std::vector<double> gv(static_cast<std::size_t>(ng + 1));
    for (int i = 0; i <= ng; ++i)
        gv[static_cast<std::size_t>(i)] = gspec.pdf(-1.5 + step * i);
    GridDensity g = GridDensity::normalized(-1.5, step, std::move(gv));
    const double vf = variance_of_grid(f), vg = variance_of_grid(g);
    CHECK(variance_of_grid(convolve(f, g)) == doctest::Approx(vf + vg).epsilon(1e-5));
}

TEST_CASE("property: grid moments are nondecreasing in p") {
    for (const auto& spec : lcb::testing::symmetric_log_concave()) {
        const auto grid = spec.to_grid(4096, 12.0);
        double prev = 0.0;
        bool first = true;
        for (double p : {-0.5, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double m = moment_of_grid(grid, p, 0.0);
            if (!first) CHECK(m >= prev * (1.0 - 1e-9));
            prev = m;
            first = false;
        }
    }
}

TEST_CASE("grid density invariants are enforced") {
    CHECK_THROWS_AS(GridDensity(0.0, -0.1, std::vector<double>(10, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(GridDensity(0.0, 1.0, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridDensity(0.0, 1.0, std::vector<double>{0.5, -0.5, 0.5}),
                    std::invalid_argument);
    // mass far from 1
    CHECK_THROWS_AS(GridDensity(0.0, 1.0, std::vector<double>(11, 1.0)), std::invalid_argument);
}

} // TEST_SUITE
