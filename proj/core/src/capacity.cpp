#include "lcb/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace lcb {

namespace {

constexpr double kPiE = std::numbers::pi * std::numbers::e;

// Discrete channel for Y = X + Z on a shared lattice: the transition law is
// a pure index shift of the noise pmf, so every BA pass is a correlation.
struct ShiftChannel {
    std::vector<double> pz;   // noise pmf
    std::vector<double> x;    // input positions
    double noise_entropy = 0.0;
    double noise_variance = 0.0;

    std::size_t n_in() const { return x.size(); }
    std::size_t n_out() const { return x.size() + pz.size() - 1; }
};

ShiftChannel make_channel(const GridDensity& noise_grid, double input_extent) {
    ShiftChannel ch;
    const double step = noise_grid.step();
    const std::size_t nz = noise_grid.size();
    ch.pz.resize(nz);
    double total = 0.0;
    for (std::size_t j = 0; j < nz; ++j) {
        const double w = (j == 0 || j + 1 == nz) ? 0.5 : 1.0;
        ch.pz[j] = w * noise_grid.values()[j];
        total += ch.pz[j];
    }
    for (double& v : ch.pz) v /= total;
    for (std::size_t j = 0; j < nz; ++j)
        if (ch.pz[j] > 0.0) ch.noise_entropy -= ch.pz[j] * std::log(ch.pz[j]);
    ch.noise_variance = variance_of_grid(noise_grid);
    const int half = std::max(1, static_cast<int>(std::floor(input_extent / step)));
    ch.x.resize(static_cast<std::size_t>(2 * half + 1));
    for (int i = -half; i <= half; ++i)
        ch.x[static_cast<std::size_t>(i + half)] = step * i;
    return ch;
}

struct SweepPoint {
    double mu = 0.0;
    double power = 0.0;
    double mi = 0.0;
    double gap = 0.0; // certified bound on the Lagrangian's suboptimality
    std::vector<double> p;
    int iterations = 0;
};

// Blahut capacity-cost iteration at fixed multiplier mu:
//   D_i = sum_j pz_j ln(pz_j / q_{i+j}),  p_i <- p_i exp(D_i - mu x_i^2) / Z.
// The seed blends the warm start with the Gaussian input matched to this
// multiplier's water level (exact for Gaussian noise, a good approximation
// otherwise) plus a trace of uniform mass so that inputs emptied at one
// multiplier can regrow at another. Stops when the duality certificate
// closes or when both the power and the mutual information stop moving.
SweepPoint solve_fixed_mu(const ShiftChannel& ch, double mu, const std::vector<double>& warm,
                          const CapacitySettings& settings) {
    const std::size_t m = ch.n_in();
    const std::size_t nz = ch.pz.size();
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    std::vector<double> p(m);
    {
        const double water_var =
            std::max(0.5 / mu - ch.noise_variance, 1e-6 * ch.noise_variance);
        const double blend = 1e-6 / static_cast<double>(m);
        std::vector<double> gauss(m);
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            gauss[i] = std::exp(-0.5 * ch.x[i] * ch.x[i] / water_var);
            total += gauss[i];
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] = 0.5 * warm[i] + 0.5 * gauss[i] / total + blend;
            norm += p[i];
        }
        for (double& v : p) v /= norm;
    }

    std::vector<double> q(ch.n_out());
    std::vector<double> lq(ch.n_out()); // ln q, hoisted out of the score pass
    std::vector<double> score(m);
    double best_gap = std::numeric_limits<double>::infinity();
    double prev_power = -1.0, prev_mi = -1.0;
    double cur_power = 0.0, cur_mi = 0.0;
    int stable = 0;
    int iter = 0;
    for (; iter < settings.max_iterations; ++iter) {
        std::fill(q.begin(), q.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double pi = p[i];
            if (pi == 0.0) continue;
            for (std::size_t j = 0; j < nz; ++j) q[i + j] += pi * ch.pz[j];
        }
        double hy = 0.0;
        for (std::size_t k = 0; k < q.size(); ++k) {
            // Outputs with q = 0 are reachable only from inputs that already
            // lost all mass; multiplicative updates cannot revive them this
            // solve, so a -inf log only ever multiplies a zero weight.
            lq[k] = q[k] > 0.0 ? std::log(q[k]) : kNegInf;
            if (q[k] > 0.0) hy -= q[k] * lq[k];
        }
        double mean_score = 0.0;
        double max_score = kNegInf;
        for (std::size_t i = 0; i < m; ++i) {
            double cross = 0.0; // sum_j pz_j ln q_{i+j}
            const double* lqi = lq.data() + i;
            for (std::size_t j = 0; j < nz; ++j) {
                if (ch.pz[j] > 0.0) cross += ch.pz[j] * lqi[j];
            }
            score[i] =
                std::isfinite(cross) ? -ch.noise_entropy - cross - mu * ch.x[i] * ch.x[i]
                                     : kNegInf;
            max_score = std::max(max_score, score[i]);
            if (p[i] > 0.0) mean_score += p[i] * score[i];
        }
        best_gap = std::min(best_gap, max_score - mean_score);

        cur_power = 0.0;
        for (std::size_t i = 0; i < m; ++i) cur_power += p[i] * ch.x[i] * ch.x[i];
        cur_mi = hy - ch.noise_entropy;
        if (!std::isfinite(cur_mi) || !std::isfinite(cur_power))
            throw AccuracyError("blahut_arimoto_capacity: iteration diverged", cur_mi, mu);

        const bool moved = std::abs(cur_power - prev_power) > 1e-7 * std::max(1.0, cur_power) ||
                           std::abs(cur_mi - prev_mi) > 1e-7 * std::max(1.0, cur_mi);
        stable = moved ? 0 : stable + 1;
        prev_power = cur_power;
        prev_mi = cur_mi;
        if (best_gap <= settings.duality_gap_tol || stable >= 5) break;

        double z = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            p[i] = p[i] > 0.0 ? p[i] * std::exp(score[i] - max_score) : 0.0;
            z += p[i];
        }
        for (double& v : p) v /= z;
    }

    SweepPoint pt;
    pt.mu = mu;
    pt.gap = best_gap;
    pt.iterations = iter;
    pt.power = cur_power;
    pt.mi = cur_mi;
    pt.p = std::move(p);
    if (std::getenv("LCB_CAP_DEBUG"))
        std::fprintf(stderr, "mu=%.5g E=%.5g I=%.6f gap=%.3g iters=%d\n", pt.mu, pt.power, pt.mi,
                     pt.gap, pt.iterations);
    return pt;
}

} // namespace

double gaussian_capacity(double var_z, double p) {
    if (!(var_z > 0.0) || !(p > 0.0))
        throw std::domain_error("gaussian_capacity: requires positive arguments");
    return 0.5 * std::log1p(p / var_z);
}

CapacityResult blahut_arimoto_capacity_detailed(const GridDensity& noise_grid, double p,
                                                double input_extent,
                                                const CapacitySettings& settings) {
    if (!(p > 0.0))
        throw std::domain_error("blahut_arimoto_capacity: requires positive power");
    if (!(input_extent > 0.0))
        throw std::domain_error("blahut_arimoto_capacity: requires positive input extent");

    ShiftChannel ch = make_channel(noise_grid, input_extent);
    const std::size_t m = ch.n_in();
    std::vector<double> p_uniform(m, 1.0 / static_cast<double>(m));

    const double mu_center = 0.5 / (p + ch.noise_variance);
    const double mu_hi = mu_center * 1e2;
    const double mu_lo = mu_center * 1e-2;

    int iterations = 0;
    // Sweep from tight to loose: E[X^2] grows as mu falls. Stop once the
    // budget is bracketed with margin; looser multipliers are unused.
    std::vector<SweepPoint> points;
    const double ratio =
        std::pow(mu_lo / mu_hi, 1.0 / static_cast<double>(settings.sweep_points - 1));
    for (int k = 0; k < settings.sweep_points; ++k) {
        const double mu = mu_hi * std::pow(ratio, k);
        points.push_back(
            solve_fixed_mu(ch, mu, points.empty() ? p_uniform : points.back().p, settings));
        iterations += points.back().iterations;
        if (points.back().power > 2.0 * p) break;
    }
    // Extend downward if even the loosest multiplier stays under budget.
    for (int tries = 0; tries < 6 && points.back().power < p; ++tries) {
        points.push_back(solve_fixed_mu(ch, points.back().mu * 0.1, points.back().p, settings));
        iterations += points.back().iterations;
    }
    // Extend upward if even the tightest multiplier overshoots.
    for (int tries = 0; tries < 6 && points.front().power > p; ++tries) {
        points.insert(points.begin(),
                      solve_fixed_mu(ch, points.front().mu * 10.0, points.front().p, settings));
        iterations += points.front().iterations;
    }

    // Locate the feasibility bracket and refine it once, geometrically.
    auto bracket = [&]() -> std::pair<std::size_t, std::size_t> {
        for (std::size_t k = 0; k + 1 < points.size(); ++k)
            if (points[k].power <= p && points[k + 1].power > p) return {k, k + 1};
        return {points.size(), points.size()};
    };
    auto [lo, hi] = bracket();
    if (lo < points.size()) {
        std::vector<SweepPoint> refined;
        const double r_ratio = std::pow(points[hi].mu / points[lo].mu,
                                        1.0 / static_cast<double>(settings.refine_points + 1));
        for (int k = 1; k <= settings.refine_points; ++k) {
            const double mu = points[lo].mu * std::pow(r_ratio, k);
            refined.push_back(solve_fixed_mu(ch, mu, points[lo].p, settings));
            iterations += refined.back().iterations;
        }
        points.insert(points.begin() + static_cast<std::ptrdiff_t>(hi),
                      std::make_move_iterator(refined.begin()),
                      std::make_move_iterator(refined.end()));
        std::sort(points.begin(), points.end(),
                  [](const SweepPoint& a, const SweepPoint& b) { return a.mu > b.mu; });
    }

    // A feasible reference input: the lattice Gaussian at the full power
    // budget. Its mutual information both lower-bounds the capacity and
    // backstops the sweep when the alternating minimization converges
    // slowly near the feasibility boundary.
    {
        SweepPoint gauss_input;
        gauss_input.mu = 0.0;
        gauss_input.p.resize(m);
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            gauss_input.p[i] = std::exp(-0.5 * ch.x[i] * ch.x[i] / p);
            total += gauss_input.p[i];
        }
        for (double& v : gauss_input.p) v /= total;
        std::vector<double> q(ch.n_out(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double pi = gauss_input.p[i];
            for (std::size_t j = 0; j < ch.pz.size(); ++j) q[i + j] += pi * ch.pz[j];
        }
        double hy = 0.0;
        for (double v : q)
            if (v > 0.0) hy -= v * std::log(v);
        gauss_input.mi = hy - ch.noise_entropy;
        for (std::size_t i = 0; i < m; ++i)
            gauss_input.power += gauss_input.p[i] * ch.x[i] * ch.x[i];
        if (gauss_input.power <= p) points.push_back(std::move(gauss_input));
    }
    std::sort(points.begin(), points.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.power < b.power; });

    // The capacity estimate is the best feasible point, possibly improved by
    // the chord at E[X^2] = p between straddling points (time-sharing two
    // sweep inputs is itself an admissible input).
    const SweepPoint* best = nullptr;
    for (const auto& pt : points)
        if (pt.power <= p && (!best || pt.mi > best->mi)) best = &pt;
    if (!best)
        throw AccuracyError("blahut_arimoto_capacity: no feasible sweep point", 0.0, p);

    CapacityResult result;
    result.capacity_nats = best->mi;
    result.achieved_power = best->power;
    result.multiplier = best->mu;
    result.iterations = iterations;
    result.certified_gap = best->gap;
    result.boundary_mass = best->p.front() + best->p.back();

    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const auto& a = points[k];
        const auto& b = points[k + 1];
        if (a.power <= p && b.power > p && b.power > a.power) {
            const double w = (p - a.power) / (b.power - a.power);
            const double chord = a.mi + w * (b.mi - a.mi);
            if (chord > result.capacity_nats) {
                result.capacity_nats = chord;
                result.achieved_power = p;
                result.multiplier = a.mu;
                result.certified_gap = std::max(a.gap, b.gap);
                result.boundary_mass =
                    (1.0 - w) * (a.p.front() + a.p.back()) + w * (b.p.front() + b.p.back());
            }
        }
    }
    if (result.achieved_power > p * (1.0 + 1e-6) + 1e-12)
        throw std::logic_error("blahut_arimoto_capacity: power constraint violated at optimum");
    return result;
}

double blahut_arimoto_capacity(const GridDensity& noise_grid, double p, double input_extent,
                               const CapacitySettings& settings) {
    return blahut_arimoto_capacity_detailed(noise_grid, p, input_extent, settings).capacity_nats;
}

double gaussian_input_mi(const GridDensity& noise_grid, double p) {
    if (!(p > 0.0))
        throw std::domain_error("gaussian_input_mi: requires positive power");
    const double step = noise_grid.step();
    const double sigma = std::sqrt(p);
    const int half = std::max(32, static_cast<int>(std::ceil(10.0 * sigma / step)));
    std::vector<double> values(static_cast<std::size_t>(2 * half + 1));
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    for (int i = -half; i <= half; ++i) {
        const double x = step * i;
        values[static_cast<std::size_t>(i + half)] = norm * std::exp(-0.5 * x * x / p);
    }
    GridDensity input(GridDensity::normalized(-step * half, step, std::move(values)));
    return entropy_of_grid(convolve(input, noise_grid)) - entropy_of_grid(noise_grid);
}

BoundReport capacity_gap_bound(const DistributionSpec& noise, double p, int grid_n,
                               const CapacitySettings& settings) {
    if (!noise.log_concave())
        throw std::invalid_argument("capacity_gap_bound: noise must be log-concave");
    const double lower = gaussian_capacity(noise.variance(), p);
    const double upper = lower + 0.5 * std::log(kPiE / 2.0);
    const GridDensity grid = default_grid(noise, grid_n);
    const double extent = 6.0 * std::sqrt(p + noise.variance());
    const double measured = blahut_arimoto_capacity(grid, p, extent, settings);
    return make_bound_report("capacity_gap", lower, measured, upper, 0.01,
                             {{"power", p}, {"var_z", noise.variance()}});
}

BoundReport capacity_vector_bound(const ProductDistribution& noise, double p) {
    for (const auto& c : noise.components())
        if (!c.symmetric() || !c.log_concave())
            throw std::invalid_argument(
                "capacity_vector_bound: noise components must be symmetric log-concave");
    if (!(p > 0.0))
        throw std::domain_error("capacity_vector_bound: requires positive power");

    const int n = noise.n();
    const double nn = static_cast<double>(n);
    const double det_root = std::pow(noise.covariance_determinant(), 1.0 / n);
    const double mean_sq = noise.mean_square_norm() / nn; // (1/n) ||Z||_2^2
    // n = 1 collapses onto the scalar chain, whose constant matches c = 1/4.
    const double c_n = n == 1 ? 0.25 : c_constant(n, noise.unconditional());

    const double lower_capacity = 0.5 * nn * std::log1p(p / det_root);
    const double gap_cap =
        0.5 * nn * std::log(2.0 * kPiE * c_n * (mean_sq + p) / (det_root + p));
    BoundReport rep = make_bound_report("capacity_vector_gap", 0.0, gap_cap, std::nullopt, 1e-12,
                                        {{"n", nn}, {"power", p}});
    rep.parameters["lower_capacity"] = lower_capacity;
    rep.parameters["upper_capacity"] = lower_capacity + gap_cap;
    rep.parameters["ratio_term"] = (mean_sq + p) / (det_root + p);
    return rep;
}

double jscc_converse(double sigma2, double snr) {
    if (!(sigma2 > 0.0))
        throw std::domain_error("jscc_converse: requires positive source variance");
    if (!(snr >= 0.0))
        throw std::domain_error("jscc_converse: requires nonnegative snr");
    const double c = 2.0 / kPiE;
    return c * c * sigma2 / (1.0 + snr);
}

double jscc_gaussian_opta(double sigma2, double snr) {
    return sigma2 / (1.0 + snr);
}

CapacityPoint capacity_point(const DistributionSpec& noise, double power, int grid_n,
                             const CapacitySettings& settings) {
    CapacityPoint pt{.power = power, .noise = noise};
    const GridDensity grid = default_grid(noise, grid_n);
    pt.lower_gaussian_nats = gaussian_capacity(noise.variance(), power);
    pt.upper_nats = pt.lower_gaussian_nats + 0.5 * std::log(kPiE / 2.0);
    pt.ba_nats =
        blahut_arimoto_capacity(grid, power, 6.0 * std::sqrt(power + noise.variance()), settings);
    pt.gaussian_input_mi_nats = gaussian_input_mi(grid, power);
    return pt;
}

} // namespace lcb
