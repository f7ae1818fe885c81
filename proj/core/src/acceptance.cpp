#include "lcb/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "lcb/capacity.hpp"
#include "lcb/entropy_bounds.hpp"
#include "lcb/rate_distortion.hpp"
#include "lcb/reverse_epi.hpp"

namespace lcb::acceptance {

namespace {

constexpr double kPiE = std::numbers::pi * std::numbers::e;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Check {
    bool ok = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::string worst_label;

    // margin >= 0 means pass; track the tightest one.
    void add(double margin, const std::string& label) {
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_label = label;
        }
        if (!(margin >= 0.0)) ok = false;
    }
};

std::vector<DistributionSpec> unit_variance_sources() {
    return {DistributionSpec::gaussian(1.0),
            DistributionSpec::laplace(1.0 / std::sqrt(2.0)),
            DistributionSpec::uniform(std::sqrt(12.0))};
}

std::vector<DistributionSpec> symmetric_catalog() {
    return {DistributionSpec::gaussian(1.0), DistributionSpec::laplace(1.0),
            DistributionSpec::uniform(2.0), DistributionSpec::generalized_gaussian(1.5, 1.0),
            DistributionSpec::generalized_gaussian(4.0, 1.0)};
}

std::vector<DistributionSpec> zero_mean_log_concave_catalog() {
    auto specs = symmetric_catalog();
    specs.push_back(DistributionSpec::exponential(1.0).shifted(-1.0));
    return specs;
}

// --- criterion 1: uniform-source mean-square gap --------------------------

CriterionResult criterion_uniform_gap() {
    CriterionResult res{1, "uniform source mean-square BA gap"};
    Check check;
    const auto source = DistributionSpec::uniform(std::sqrt(12.0)); // unit variance
    const std::vector<double> d_targets{0.01, 0.05, 0.1};
    const double cap_bits = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e / 12.0);

    const auto t0 = std::chrono::steady_clock::now();
    RDCurve curve = rd_curve(source, 2.0, d_targets, 1024);
    const double solve_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double per_point = solve_seconds / static_cast<double>(d_targets.size());

    for (const RDPoint& pt : curve.points) {
        const double gap_bits = to_bits(*pt.ba_nats - pt.slb_nats);
        check.add(gap_bits + 0.01, "gap>=0 at d=" + fmt(pt.d));
        check.add(cap_bits + 0.03 - gap_bits, "gap<=cap at d=" + fmt(pt.d));
    }
    check.add(60.0 - per_point, "time per point");
    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + "), " +
                 fmt(per_point) + " s/point";
    return res;
}

// --- criterion 2: universal RD gap across sources and exponents -----------

CriterionResult criterion_universal_rd_gap() {
    CriterionResult res{2, "universal rate-distortion gap"};
    Check check;
    const std::vector<double> r_values{1.0, 1.5, 2.0, 3.0, 4.0};

    for (const auto& spec : unit_variance_sources()) {
        for (double r : r_values) {
            // d^{1/r} in {0.25, 0.5} keeps every point in the positive regime.
            const std::vector<double> d_targets{std::pow(0.25, r), std::pow(0.5, r)};
            RDCurve curve = rd_curve(spec, r, d_targets, 1024);
            const double cap_bits = to_bits(universal_gap_curve(r, spec.symmetric()));
            for (const RDPoint& pt : curve.points) {
                if (pt.regime != RdRegime::positive) continue;
                const double gap_bits = to_bits(*pt.ba_nats - pt.slb_nats);
                check.add(cap_bits + 0.03 - gap_bits,
                          spec.to_string() + " r=" + fmt(r) + " d=" + fmt(pt.d));
            }
        }
    }
    // Formula-side peaks of the two figure curves over r in [1, 10].
    double general_peak = 0.0, symmetric_peak = 0.0;
    for (double r = 1.0; r <= 10.0 + 1e-9; r += 0.05) {
        general_peak = std::max(general_peak, universal_gap_curve(r, false));
        symmetric_peak = std::max(symmetric_peak, universal_gap_curve(r, true));
    }
    check.add(std::log(std::sqrt(kPiE)) + 1e-12 - general_peak, "general peak");
    check.add(1.0 + 1e-12 - symmetric_peak, "symmetric peak");

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " bits (" + check.worst_label + ")";
    return res;
}

// --- criteria 3 and 4 share the capacity matrix ----------------------------

struct CapacityMatrix {
    std::vector<CapacityPoint> points;
};

CapacityMatrix capacity_matrix() {
    CapacityMatrix mat;
    for (const auto& noise : unit_variance_sources())
        for (double power : {0.1, 1.0, 10.0})
            mat.points.push_back(capacity_point(noise, power, 512));
    return mat;
}

CriterionResult criterion_capacity_gap(const CapacityMatrix& mat) {
    CriterionResult res{3, "additive-noise capacity gap"};
    Check check;
    for (const auto& pt : mat.points) {
        const double gap_bits = to_bits(*pt.ba_nats - pt.lower_gaussian_nats);
        const std::string label = pt.noise.to_string() + " P=" + fmt(pt.power);
        check.add(gap_bits + 0.01, "saddle point " + label);
        check.add(to_bits(0.5 * std::log(kPiE / 2.0)) + 0.03 - gap_bits, "cap " + label);
        if (pt.noise.family() == Family::gaussian)
            check.add(0.02 - gap_bits, "gaussian tightness " + label);
    }
    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " bits (" + check.worst_label + ")";
    return res;
}

CriterionResult criterion_zamir_erez(const CapacityMatrix& mat) {
    CriterionResult res{4, "Gaussian-input mutual information gap"};
    Check check;
    for (const auto& pt : mat.points) {
        const double diff_bits = to_bits(*pt.ba_nats - *pt.gaussian_input_mi_nats);
        const std::string label = pt.noise.to_string() + " P=" + fmt(pt.power);
        check.add(diff_bits + 0.01, "nonnegative " + label);
        check.add(0.5 + 0.02 - diff_bits, "half-bit cap " + label);
    }
    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " bits (" + check.worst_label + ")";
    return res;
}

// --- criterion 5: entropy sandwich suite -----------------------------------

CriterionResult criterion_entropy_sandwich() {
    CriterionResult res{5, "entropy sandwich suite"};
    Check check;
    const std::vector<double> p_grid{-0.5, 0.5, 1.0, 2.0, 3.0, 5.0};
    for (const auto& spec : symmetric_catalog()) {
        const double h = spec.entropy();
        for (double p : p_grid) {
            check.add(h - entropy_lower_symmetric(spec, p) + 1e-6,
                      spec.to_string() + " lower p=" + fmt(p));
            if (p > 0.0)
                check.add(entropy_upper(spec, p) - h + 1e-6,
                          spec.to_string() + " upper p=" + fmt(p));
        }
    }
    // General (non-symmetric) bound on the exponential law.
    const auto expo = DistributionSpec::exponential(1.0);
    for (double p : {1.0, 2.0, 3.0, 5.0})
        check.add(expo.entropy() - entropy_lower_general(expo, p) + 1e-6,
                  "exponential lower p=" + fmt(p));

    // Laplace meets the moment comparison with equality: ||X||_p scaled by
    // Gamma(p+1)^{1/p} is constant in p.
    const auto lap = DistributionSpec::laplace(1.0);
    for (auto [p, q] : std::vector<std::pair<double, double>>{{1.0, 3.0}, {0.5, 2.0}, {2.0, 5.0}}) {
        const auto rep = moment_comparison_symmetric(lap, p, q);
        const double lhs = rep.measured;
        const double rhs = *rep.upper;
        check.add(1e-9 - std::abs(lhs - rhs), "laplace equality p=" + fmt(p) + " q=" + fmt(q));
    }

    // Uniform saturates the symmetric bound in the p -> -1 limit.
    const auto uni = DistributionSpec::uniform(2.0);
    check.add(1e-3 - std::abs(entropy_lower_symmetric(uni, -0.999) - uni.entropy()),
              "uniform limit p=-0.999");

    // The generalized Gaussian saturates the moment upper bound at p = r.
    for (auto [r, d] : std::vector<std::pair<double, double>>{{1.5, 1.0}, {2.0, 1.0},
                                                              {3.0, 0.5}, {4.0, 2.0}}) {
        const auto gg = DistributionSpec::generalized_gaussian(r, d);
        check.add(1e-10 - std::abs(gg.entropy() - entropy_upper(gg, r)),
                  "gg saturation r=" + fmt(r));
    }

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

// --- criterion 6: relative entropy caps -------------------------------------

CriterionResult criterion_relative_entropy() {
    CriterionResult res{6, "relative entropy caps"};
    Check check;
    const double cap = 0.5 * std::log(kPiE / 2.0);
    for (const auto& spec : zero_mean_log_concave_catalog()) {
        const double d = kl_to_gaussian(default_grid(spec, 4096));
        check.add(d + 1e-6, spec.to_string() + " nonneg");
        check.add(cap - d, spec.to_string() + " cap");
    }
    // Uniform attains the p -> -1 cap: the bound at p = -0.9999 sits within
    // 1e-4 of the true divergence 0.5 ln(2 pi e / 12).
    const auto uni = DistributionSpec::uniform(2.0);
    const auto rep = relative_entropy_bound(uni, -0.9999, 8192);
    check.add(1e-4 - std::abs(*rep.upper - rep.measured), "uniform p->-1 equality");

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

// --- criterion 7: reverse entropy power inequality ---------------------------

CriterionResult criterion_reverse_epi() {
    CriterionResult res{7, "reverse entropy power inequality"};
    Check check;
    auto pairs_catalog = zero_mean_log_concave_catalog();
    for (std::size_t a = 0; a < pairs_catalog.size(); ++a) {
        for (std::size_t b = a; b < pairs_catalog.size(); ++b) {
            const auto rep = verify_reverse_epi_scalar(pairs_catalog[a], pairs_catalog[b], 8192);
            const double ratio = rep.n_sum / (rep.n_x + rep.n_y);
            const std::string label =
                pairs_catalog[a].to_string() + " + " + pairs_catalog[b].to_string();
            check.add(kPiE / 2.0 + 1e-3 - ratio, "reverse " + label);
            check.add(ratio - (1.0 - 1e-4), "forward " + label);
            if (pairs_catalog[a].family() == Family::gaussian &&
                pairs_catalog[b].family() == Family::gaussian)
                check.add(1e-4 - std::abs(ratio - 1.0), "gaussian equality");
        }
    }
    // Product variant with proportional covariances (t = 4 on the second).
    const auto ux = ProductDistribution::of(
        {DistributionSpec::uniform(1.0), DistributionSpec::uniform(2.0)});
    const auto uy = ProductDistribution::of(
        {DistributionSpec::uniform(2.0), DistributionSpec::uniform(4.0)});
    const auto prep = verify_reverse_epi_product(ux, uy, 8192);
    check.add(prep.reverse_slack, "product reverse");
    check.add(prep.forward_slack + 1e-4 * (prep.n_x + prep.n_y), "product forward");

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

// --- criterion 8: gamma-concave suite ----------------------------------------

CriterionResult criterion_gamma_concave() {
    CriterionResult res{8, "gamma-concave entropy bounds"};
    Check check;
    for (auto [g, p] : std::vector<std::pair<double, double>>{
             {-0.05, 9.0}, {-0.1, 4.0}, {-0.2, 1.5}}) {
        const auto ec = DistributionSpec::extended_cauchy(g);
        const double h = ec.entropy();
        const double lower = entropy_lower_gamma_concave(ec, p);
        check.add(h - lower + 1e-6, "cauchyext gamma=" + fmt(g));
    }
    // Gamma-function identity behind the second-moment corollary:
    // Gamma(a-1)^3 / (Gamma(a)^2 Gamma(a-3)) = (a-2)(a-3)/(a-1)^2.
    for (int k = 1; k <= 20; ++k) {
        const double g = -1.0 / 3.0 + k * (1.0 / 3.0) / 21.0;
        const double a = -1.0 / g;
        const double lhs =
            std::exp(3.0 * log_gamma(a - 1.0) - 2.0 * log_gamma(a) - log_gamma(a - 3.0));
        const double rhs = (a - 2.0) * (a - 3.0) / ((a - 1.0) * (a - 1.0));
        check.add(1e-10 - std::abs(lhs / rhs - 1.0), "gamma identity a=" + fmt(a));
    }
    // Continuity onto the log-concave bound as gamma -> 0; the deviation
    // of the constant factor is (1+p)|gamma|/2 + O(gamma^2).
    const auto ec0 = DistributionSpec::extended_cauchy(-1e-3);
    const double p0 = 0.1;
    const double log_concave_form =
        std::log(2.0 * ec0.abs_moment(p0, 0.0).value) - log_gamma(p0 + 1.0) / p0;
    check.add(1e-3 - std::abs(entropy_lower_gamma_concave(ec0, p0) - log_concave_form),
              "gamma->0 continuity");

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

// --- criterion 9: Borell moment functional -----------------------------------

CriterionResult criterion_kpb() {
    CriterionResult res{9, "moment functional log-concavity"};
    Check check;
    std::vector<double> r_grid;
    for (double r = -0.9; r <= 5.0 + 1e-9; r += 0.245) r_grid.push_back(r);

    for (const auto& spec : symmetric_catalog()) {
        const auto curve = kpb_F(spec, r_grid, KpbConvention::half_density);
        for (std::size_t i = 1; i + 1 < curve.points.size(); ++i) {
            const double f0 = curve.points[i - 1].value;
            const double f1 = curve.points[i].value;
            const double f2 = curve.points[i + 1].value;
            check.add(f1 * f1 - f0 * f2 * (1.0 - 1e-8),
                      spec.to_string() + " log-concavity r=" + fmt(curve.points[i].r));
        }
        // F(-1) = f_X(0): extrapolate the quadrature toward r = -1 and
        // compare with the layer-cake value.
        auto f_near = [&](double delta) {
            const double integral = integrate_power_weighted(
                [&](double t) { return spec.pdf(t); }, -1.0 + delta);
            return integral / std::exp(log_gamma(delta));
        };
        const double extrapolated = 2.0 * f_near(1e-4) - f_near(2e-4);
        check.add(1e-6 - std::abs(extrapolated - curve.at_minus_one),
                  spec.to_string() + " F(-1)");
    }
    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

// --- criterion 10: constant regressions ---------------------------------------

CriterionResult criterion_constants() {
    CriterionResult res{10, "constant regressions"};
    Check check;
    check.add(1e-12 - std::abs(alpha(2.0) - std::sqrt(2.0 * kPiE)), "alpha(2)");
    check.add(1e-12 - std::abs(beta(2.0) - std::sqrt(2.0)), "beta(2)");
    for (int n = 2; n <= 8; ++n) {
        const bool unconditional_wins = c_constant(n, true) == std::numbers::e * std::numbers::e / 2.0;
        check.add((n >= 5) == unconditional_wins ? 1.0 : -1.0, "c(n) crossover n=" + fmt(n));
    }
    check.add(1e-6 - std::abs(jscc_converse(1.0, 3.0) - 0.013712), "jscc floor");
    // Symmetric gap curve continuous at r = 2; the general curve jumps.
    const double left = universal_gap_curve(2.0, true);
    const double right_sym = std::min(
        std::log(alpha(2.0) * gamma_pow(3.0, 0.5) / (2.0 * std::sqrt(2.0))),
        std::log(std::sqrt(kPiE / 2.0) * beta(2.0)));
    check.add(1e-9 - std::abs(left - right_sym), "symmetric continuity at r=2");
    const double right_gen = std::log(std::sqrt(kPiE / 2.0) * beta(2.0));
    check.add(right_gen - universal_gap_curve(2.0, false) - 1e-6, "general jump at r=2");

    res.passed = check.ok;
    res.detail = "worst margin " + fmt(check.worst_margin) + " (" + check.worst_label + ")";
    return res;
}

template <typename F>
CriterionResult timed(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res = fn();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace

std::vector<CriterionResult> run_all(std::ostream& out) {
    std::vector<CriterionResult> results;
    auto emit = [&](CriterionResult res) {
        out << "criterion " << res.id << ": " << (res.passed ? "PASS" : "FAIL") << " - "
            << res.name << " (" << res.detail << ") [" << fmt(res.seconds) << " s]\n";
        out.flush();
        results.push_back(std::move(res));
    };

    emit(timed(criterion_uniform_gap));
    emit(timed(criterion_universal_rd_gap));
    {
        const auto t0 = std::chrono::steady_clock::now();
        CapacityMatrix mat = capacity_matrix();
        const double setup =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CriterionResult c3 = criterion_capacity_gap(mat);
        c3.seconds = setup;
        emit(std::move(c3));
        emit(timed([&] { return criterion_zamir_erez(mat); }));
    }
    emit(timed(criterion_entropy_sandwich));
    emit(timed(criterion_relative_entropy));
    emit(timed(criterion_reverse_epi));
    emit(timed(criterion_gamma_concave));
    emit(timed(criterion_kpb));
    emit(timed(criterion_constants));
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.passed; });
}

} // namespace lcb::acceptance
