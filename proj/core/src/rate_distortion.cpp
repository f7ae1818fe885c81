#include "lcb/rate_distortion.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcb/entropy_bounds.hpp"

namespace lcb {

namespace {

constexpr double kTwoPiE = 2.0 * std::numbers::pi * std::numbers::e;
constexpr double kSqrtTwoPiE = 4.132731354122493; // sqrt(2 pi e)

// D(X || G_X) with G_X ~ N(0, ||X||_2^2), in closed form.
double divergence_to_gaussian(const DistributionSpec& spec) {
    const double norm2 = spec.abs_moment(2.0, 0.0).value;
    return 0.5 * std::log(kTwoPiE * norm2 * norm2) - spec.entropy();
}

} // namespace

double beta(double r) {
    return std::sqrt(1.0 + std::pow(r, 2.0 / r) *
                               std::exp(log_gamma(3.0 / r) - log_gamma(1.0 / r)));
}

double shannon_lower_bound(const DistributionSpec& spec, double r, double d) {
    if (!(d > 0.0))
        throw std::domain_error("shannon_lower_bound: requires d > 0");
    return spec.entropy() - std::log(alpha(r)) - std::log(d) / r;
}

const char* to_string(RdRegime regime) {
    switch (regime) {
        case RdRegime::positive: return "positive";
        case RdRegime::zero: return "zero";
        case RdRegime::indeterminate_window: return "indeterminate_window";
    }
    return "?";
}

TestChannelBounds test_channel_upper(const DistributionSpec& spec, double r, double d) {
    if (!(r >= 1.0))
        throw std::domain_error("test_channel_upper: requires r >= 1");
    if (!(d > 0.0))
        throw std::domain_error("test_channel_upper: requires d > 0");

    TestChannelBounds out;
    const double sigma = spec.abs_moment(2.0, 0.0).value;
    const double d_pow = std::pow(d, 1.0 / r);

    if (r <= 2.0) {
        if (sigma > d_pow) {
            out.regime = RdRegime::positive;
            out.gaussian = 0.5 * std::log(sigma * sigma / std::pow(d, 2.0 / r));
        } else {
            out.regime = RdRegime::zero;
        }
        return out;
    }

    // The refined symmetric construction leans on the symmetric log-concave
    // moment comparison, so symmetry alone does not qualify.
    const bool refined = spec.symmetric() && spec.log_concave();
    const double slb = shannon_lower_bound(spec, r, d);
    const double div = divergence_to_gaussian(spec);
    if (sigma >= d_pow) {
        out.regime = RdRegime::positive;
        out.gg = slb + div + std::log(beta(r));
        if (refined)
            out.symmetric = slb + div +
                            std::log(alpha(r) * gamma_pow(r + 1.0, 1.0 / r) /
                                     (2.0 * std::sqrt(std::numbers::pi * std::numbers::e)));
        return out;
    }

    const double norm_r = spec.abs_moment(r, 0.0).value;
    const bool zero_general = norm_r <= d_pow;
    const bool zero_refined =
        refined && sigma <= std::sqrt(2.0) * d_pow / gamma_pow(r + 1.0, 1.0 / r);
    if (zero_general || zero_refined) {
        out.regime = RdRegime::zero;
        return out;
    }

    out.regime = RdRegime::indeterminate_window;
    double cap = std::log(kSqrtTwoPiE * beta(r) / alpha(r));
    if (refined)
        cap = std::min(cap, std::log(gamma_pow(r + 1.0, 1.0 / r) / std::sqrt(2.0)));
    out.window_cap = cap;
    return out;
}

double universal_gap_curve(double r, bool symmetric) {
    if (!(r >= 1.0))
        throw std::domain_error("universal_gap_curve: requires r >= 1");
    if (r <= 2.0)
        return std::log(alpha(r) / 2.0);
    const double general =
        std::log(std::sqrt(0.5 * std::numbers::pi * std::numbers::e) * beta(r));
    if (!symmetric) return general;
    const double tightened =
        std::log(alpha(r) * gamma_pow(r + 1.0, 1.0 / r) / (2.0 * std::sqrt(2.0)));
    return std::min(general, tightened);
}

// ---------------------------------------------------------------------------
// Blahut-Arimoto solver for R(d) on a finite grid.

namespace {

struct BaProblem {
    std::vector<double> p;   // source pmf
    std::vector<double> x;   // alphabet positions
    std::vector<float> rho;  // |x_i - x_j|^r, row-major (float keeps N=2048 cheap)
    std::size_t n = 0;
};

BaProblem make_problem(const GridDensity& f, double r) {
    BaProblem prob;
    prob.n = f.size();
    prob.p.resize(prob.n);
    prob.x.resize(prob.n);
    double total = 0.0;
    for (std::size_t i = 0; i < prob.n; ++i) {
        const double w = (i == 0 || i + 1 == prob.n) ? 0.5 : 1.0;
        prob.p[i] = w * f.values()[i];
        prob.x[i] = f.x(i);
        total += prob.p[i];
    }
    for (double& v : prob.p) v /= total;
    prob.rho.resize(prob.n * prob.n);
    for (std::size_t i = 0; i < prob.n; ++i)
        for (std::size_t j = 0; j < prob.n; ++j)
            prob.rho[i * prob.n + j] =
                static_cast<float>(std::pow(std::abs(prob.x[i] - prob.x[j]), r));
    return prob;
}

struct BaKnot {
    double s = 0.0;
    double d = 0.0;
    double rate = 0.0;
    double gap = 0.0;      // certified bound on the rate's suboptimality
    std::vector<double> q; // reproduction marginal at convergence
};

// Fixed-slope subproblem: alternate q_j <- q_j sum_i p_i A_ij / c_i with
// c_i = sum_j A_ij q_j, A = exp(-s rho). Stops on relative change of the
// free energy F = -sum_i p_i ln c_i, or earlier on the duality certificate
// ln(max_j T_j) <= tol, which bounds F's distance from its minimum.
BaKnot solve_fixed_s(const BaProblem& prob, double s, std::vector<double> q,
                     const BaSettings& settings, std::vector<double>& a_work) {
    const std::size_t n = prob.n;
    a_work.resize(n * n);
    for (std::size_t i = 0; i < n * n; ++i)
        a_work[i] = std::exp(-s * static_cast<double>(prob.rho[i]));

    // Blend a trace of uniform into the warm start: reproduction points
    // flushed at one slope must be able to regrow at another.
    {
        const double blend = 1e-6 / static_cast<double>(n);
        double total = 0.0;
        for (double& v : q) {
            v = (1.0 - 1e-6) * v + blend;
            total += v;
        }
        for (double& v : q) v /= total;
    }

    std::vector<double> c(n), t(n);
    double f_prev = std::numeric_limits<double>::infinity();
    // The free energy decreases monotonically, so the smallest certificate
    // seen anywhere in the run still bounds the final value's suboptimality.
    double best_gap = std::numeric_limits<double>::infinity();
    int since_improvement = 0;
    for (int iter = 0; iter < settings.max_iterations; ++iter) {
        double f_cur = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = a_work.data() + i * n;
            double ci = 0.0;
            for (std::size_t j = 0; j < n; ++j) ci += row[j] * q[j];
            c[i] = ci;
            f_cur -= prob.p[i] * std::log(ci);
        }
        std::fill(t.begin(), t.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = a_work.data() + i * n;
            const double w = prob.p[i] / c[i];
            for (std::size_t j = 0; j < n; ++j) t[j] += w * row[j];
        }
        double max_t = 0.0;
        for (double v : t) max_t = std::max(max_t, v);
        const double gap = std::log(max_t);
        if (gap < 0.95 * best_gap)
            since_improvement = 0;
        else
            ++since_improvement;
        best_gap = std::min(best_gap, gap);
        double qsum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            q[j] *= t[j];
            if (q[j] < 1e-300) q[j] = 0.0;
            qsum += q[j];
        }
        for (std::size_t j = 0; j < n; ++j) q[j] /= qsum;

        if (best_gap <= settings.duality_gap_tol ||
            std::abs(f_cur - f_prev) <= settings.rel_obj_tol * std::max(1.0, std::abs(f_cur)) ||
            since_improvement >= settings.stall_iterations)
            break;
        f_prev = f_cur;
    }


    // Distortion and rate at the fixed point.
    double d_val = 0.0;
    double f_val = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = a_work.data() + i * n;
        const float* rho_row = prob.rho.data() + i * n;
        double ci = 0.0, di = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double aq = row[j] * q[j];
            ci += aq;
            di += aq * static_cast<double>(rho_row[j]);
        }
        d_val += prob.p[i] * di / ci;
        f_val -= prob.p[i] * std::log(ci);
    }
    BaKnot knot;
    knot.s = s;
    knot.d = d_val;
    knot.rate = std::max(0.0, f_val - s * d_val);
    knot.gap = best_gap;
    knot.q = std::move(q);
    if (std::getenv("LCB_BA_DEBUG"))
        std::fprintf(stderr, "knot s=%.5g d=%.6g rate=%.6f gap=%.3g\n", s, knot.d, knot.rate,
                     knot.gap);
    return knot;
}

double interpolate_rate(const BaKnot& hi_d, const BaKnot& lo_d, double d) {
    if (std::abs(hi_d.d - lo_d.d) < 1e-14) return 0.5 * (hi_d.rate + lo_d.rate);
    const double w = (d - lo_d.d) / (hi_d.d - lo_d.d);
    return lo_d.rate + w * (hi_d.rate - lo_d.rate);
}

} // namespace

RDCurve blahut_arimoto_rd(const GridDensity& f, double r, const std::vector<double>& d_targets,
                          const BaSettings& settings) {
    if (!(r >= 1.0))
        throw std::domain_error("blahut_arimoto_rd: requires r >= 1");
    if (d_targets.empty())
        throw std::invalid_argument("blahut_arimoto_rd: no distortion targets");
    for (double d : d_targets)
        if (!(d > 0.0))
            throw std::invalid_argument("blahut_arimoto_rd: targets must be positive");

    BaProblem prob = make_problem(f, r);
    const double d_min_target = *std::min_element(d_targets.begin(), d_targets.end());
    const double d_max_target = *std::max_element(d_targets.begin(), d_targets.end());

    double s_lo = settings.sweep_lo_factor * r / d_min_target;
    double s_hi = settings.sweep_hi_factor * r / d_min_target;

    std::vector<double> a_work;
    std::vector<BaKnot> knots; // ascending in s, descending in d

    auto solve = [&](double s, const std::vector<double>& q0) {
        return solve_fixed_s(prob, s, q0, settings, a_work);
    };

    // Sweep from flat to steep, warm-starting each knot from the previous
    // one, and stop once coverage extends a decade below the smallest
    // target: anything steeper only resolves distortions nobody asked for.
    std::vector<double> q_uniform(prob.n, 1.0 / static_cast<double>(prob.n));
    knots.push_back(solve(s_lo, q_uniform));
    const double ratio =
        std::pow(s_hi / s_lo, 1.0 / static_cast<double>(settings.sweep_points - 1));
    for (int k = 1; k < settings.sweep_points && knots.back().d > 0.1 * d_min_target; ++k)
        knots.push_back(solve(s_lo * std::pow(ratio, k), knots.back().q));

    // Extend the flat end until the largest target is covered or the curve
    // has flattened onto R = 0.
    for (int tries = 0; tries < 10 && knots.front().d < d_max_target &&
                        knots.front().rate > 1e-7; ++tries) {
        s_lo /= 10.0;
        knots.insert(knots.begin(), solve(s_lo, knots.front().q));
    }
    // Extend the steep end until the smallest target is covered.
    for (int tries = 0; tries < 8 && knots.back().d > d_min_target; ++tries) {
        s_hi *= 10.0;
        knots.push_back(solve(s_hi, knots.back().q));
    }
    if (knots.back().d > d_min_target)
        throw std::out_of_range("blahut_arimoto_rd: target below the swept distortion range");

    const double grid_entropy = entropy_of_grid(f);

    // Zero-rate threshold of the discrete problem: the best single-point
    // reconstruction. R(d) = 0 exactly for d at or beyond it.
    double d_zero = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < prob.n; ++j) {
        double dj = 0.0;
        for (std::size_t i = 0; i < prob.n; ++i)
            dj += prob.p[i] * static_cast<double>(prob.rho[i * prob.n + j]);
        d_zero = std::min(d_zero, dj);
    }

    RDCurve curve;
    curve.r = r;

    std::vector<double> sorted_targets = d_targets;
    std::sort(sorted_targets.begin(), sorted_targets.end());
    for (double d : sorted_targets) {
        RDPoint pt;
        pt.d = d;
        pt.r = r;
        pt.slb_nats = grid_entropy - std::log(alpha(r)) - std::log(d) / r;

        if (d >= d_zero) {
            pt.ba_nats = 0.0;
            curve.points.push_back(pt);
            continue;
        }
        if (d > knots.front().d) {
            // Beyond the largest knot the curve must have flattened onto its
            // zero-rate plateau; R is nonincreasing, so the knot's rate
            // bounds the target's rate.
            if (knots.front().rate > 1e-7)
                throw std::out_of_range("blahut_arimoto_rd: target above the swept range");
            pt.ba_nats = knots.front().rate;
            curve.points.push_back(pt);
            continue;
        }
        // Bracket d between adjacent knots and bisect the slope until the
        // bracketing rates are tight.
        std::size_t hi = 0;
        while (hi + 1 < knots.size() && knots[hi + 1].d > d) ++hi;
        BaKnot a = knots[hi];     // d_a >= d
        BaKnot b = knots[hi + 1]; // d_b <= d
        for (int ref = 0; ref < settings.max_refinements_per_target &&
                          std::abs(a.rate - b.rate) > settings.knot_rate_gap &&
                          std::abs(a.d - b.d) > 1e-13; ++ref) {
            BaKnot mid = solve(std::sqrt(a.s * b.s), a.q);
            (mid.d >= d ? a : b) = std::move(mid);
        }
        if (!(std::max(a.gap, b.gap) <= settings.value_tol))
            throw AccuracyError("blahut_arimoto_rd: rate uncertain near d = " + std::to_string(d),
                                interpolate_rate(a, b, d), std::max(a.gap, b.gap));
        pt.ba_nats = interpolate_rate(a, b, d);
        curve.points.push_back(pt);
    }
    return curve;
}

RDCurve rd_curve(const DistributionSpec& spec, double r, const std::vector<double>& d_targets,
                 int ba_grid_n, const BaSettings& settings) {
    RDCurve curve = blahut_arimoto_rd(default_grid(spec, ba_grid_n), r, d_targets, settings);
    curve.spec = spec;
    for (RDPoint& pt : curve.points) {
        pt.slb_nats = shannon_lower_bound(spec, r, pt.d); // closed-form entropy
        TestChannelBounds tc = test_channel_upper(spec, r, pt.d);
        pt.ub_gauss_nats = tc.gaussian;
        pt.ub_gg_nats = tc.gg;
        pt.ub_sym_nats = tc.symmetric;
        pt.regime = tc.regime;
    }
    return curve;
}

// ---------------------------------------------------------------------------
// Vector-side bounds, formula-level on products.

namespace {

double effective_c(int n, bool unconditional) {
    // n = 1 reduces to the scalar chain, whose constant corresponds to 1/4.
    return n == 1 ? 0.25 : c_constant(n, unconditional);
}

void require_symmetric_log_concave_product(const ProductDistribution& pd, const char* who) {
    for (const auto& c : pd.components())
        if (!c.symmetric() || !c.log_concave())
            throw std::invalid_argument(std::string(who) +
                                        ": components must be symmetric log-concave");
}

} // namespace

BoundReport covariance_rd_bounds(const ProductDistribution& pd, double d) {
    require_symmetric_log_concave_product(pd, "covariance_rd_bounds");
    if (!(d > 0.0))
        throw std::domain_error("covariance_rd_bounds: requires d > 0");
    const int n = pd.n();
    const double det_root = std::pow(pd.covariance_determinant(), 1.0 / n);

    if (det_root <= d) {
        BoundReport rep = make_bound_report("covariance_rd_gap", 0.0, 0.0, 0.0, 1e-12,
                                            {{"n", static_cast<double>(n)}, {"d", d}});
        rep.parameters["zero_regime"] = 1.0;
        return rep;
    }

    double divergence = 0.0;
    for (const auto& c : pd.components())
        divergence += 0.5 * std::log(kTwoPiE * c.variance()) - c.entropy();
    const double cap = 0.5 * n * std::log(kTwoPiE * effective_c(n, pd.unconditional()));

    BoundReport rep = make_bound_report(
        "covariance_rd_gap", 0.0, divergence, cap, 1e-9,
        {{"n", static_cast<double>(n)}, {"d", d}, {"zero_regime", 0.0}});
    // The chain's middle link: the explicit upper bound (n/2) ln(|K|^{1/n}/d)
    // exceeds the Shannon lower bound by exactly the divergence.
    double h = 0.0;
    for (const auto& c : pd.components()) h += c.entropy();
    rep.parameters["slb"] = h - 0.5 * n * std::log(kTwoPiE * d);
    rep.parameters["upper_chain"] = 0.5 * n * std::log(det_root / d);
    return rep;
}

BoundReport rd_gap_bound_vector(const ProductDistribution& pd, double r, double d) {
    require_symmetric_log_concave_product(pd, "rd_gap_bound_vector");
    if (!(r >= 1.0))
        throw std::domain_error("rd_gap_bound_vector: requires r >= 1");
    if (!(d > 0.0))
        throw std::domain_error("rd_gap_bound_vector: requires d > 0");

    const int n = pd.n();
    const double nn = static_cast<double>(n);
    const double norm2_sq = pd.mean_square_norm();        // ||X||_2^2 (vector sense)
    const double det_root = std::pow(pd.covariance_determinant(), 1.0 / n);
    const double d_pow = std::pow(d, 1.0 / r);

    double divergence = 0.0;
    for (const auto& c : pd.components())
        divergence += 0.5 * std::log(kTwoPiE * c.variance()) - c.entropy();
    const double imbalance = 0.5 * nn * std::log((norm2_sq / nn) / det_root);

    std::map<std::string, double> params{{"n", nn}, {"r", r}, {"d", d},
                                         {"divergence", divergence}, {"imbalance", imbalance}};

    if (r <= 2.0) {
        if (std::sqrt(norm2_sq) > std::sqrt(nn) * d_pow) {
            const double bound =
                divergence + nn * std::log(alpha(r) / kSqrtTwoPiE) + imbalance;
            params["regime_positive"] = 1.0;
            return make_bound_report("rd_gap_vector", 0.0, bound, std::nullopt, 1e-9, params);
        }
        params["regime_zero"] = 1.0;
        return make_bound_report("rd_gap_vector", 0.0, 0.0, std::nullopt, 1e-12, params);
    }

    if (std::sqrt(norm2_sq) >= std::sqrt(nn) * d_pow) {
        const double bound = divergence + nn * std::log(beta(r)) + imbalance;
        params["regime_positive"] = 1.0;
        return make_bound_report("rd_gap_vector", 0.0, bound, std::nullopt, 1e-9, params);
    }
    double norm_r_pow = 0.0; // ||X||_r^r summed across coordinates
    for (const auto& c : pd.components())
        norm_r_pow += std::pow(c.abs_moment(r, 0.0).value, r);
    if (norm_r_pow <= nn * d) {
        params["regime_zero"] = 1.0;
        return make_bound_report("rd_gap_vector", 0.0, 0.0, std::nullopt, 1e-12, params);
    }
    const double cap = nn * std::log(kSqrtTwoPiE * beta(r) / alpha(r));
    params["regime_window"] = 1.0;
    return make_bound_report("rd_gap_vector", 0.0, cap, std::nullopt, 1e-9, params);
}

} // namespace lcb
