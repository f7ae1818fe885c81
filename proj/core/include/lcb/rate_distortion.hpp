#pragma once

#include <optional>
#include <vector>

#include "lcb/bound_report.hpp"
#include "lcb/distributions.hpp"
#include "lcb/vector_bounds.hpp"

namespace lcb {

/// beta_r = sqrt(1 + r^{2/r} Gamma(3/r) / Gamma(1/r)).
double beta(double r);

/// Shannon lower bound h(X) - ln(alpha_r d^{1/r}) in nats.
double shannon_lower_bound(const DistributionSpec& spec, double r, double d);

/// Which branch of the rate-distortion theorems a (source, r, d) triple
/// lands in: the main positive-rate branch, the forced R = 0 branch, or the
/// window between the two where only an absolute cap is known.
enum class RdRegime { positive, zero, indeterminate_window };

const char* to_string(RdRegime regime);

/// Test-channel upper bounds on R(d) from the explicit additive-noise
/// reproductions, one entry per applicable construction, plus the regime
/// and the absolute cap that applies inside the indeterminate window.
struct TestChannelBounds {
    std::optional<double> gaussian;   // r in [1,2]: 0.5 ln(sigma^2 / d^{2/r})
    std::optional<double> gg;         // r > 2:     SLB + D(X||G_X) + ln beta_r
    std::optional<double> symmetric;  // r > 2, symmetric source:
                                      //            SLB + D + ln(alpha_r Gamma(r+1)^{1/r}/(2 sqrt(pi e)))
    RdRegime regime = RdRegime::positive;
    std::optional<double> window_cap;
};

TestChannelBounds test_channel_upper(const DistributionSpec& spec, double r, double d);

/// Distribution-free cap on R(d) - SLB(d) for log-concave sources, nats:
///   r in [1,2]: ln(alpha_r / 2)
///   r > 2:      ln(sqrt(pi e / 2) beta_r), improved for symmetric sources
///               by min with ln(alpha_r Gamma(r+1)^{1/r} / (2 sqrt(2))).
double universal_gap_curve(double r, bool symmetric);

struct RDPoint {
    double d = 0.0;
    double r = 2.0;
    double slb_nats = 0.0;
    std::optional<double> ba_nats;
    std::optional<double> ub_gauss_nats;
    std::optional<double> ub_gg_nats;
    std::optional<double> ub_sym_nats;
    RdRegime regime = RdRegime::positive;
};

struct RDCurve {
    std::optional<DistributionSpec> spec;
    double r = 2.0;
    std::vector<RDPoint> points; // ordered by d
};

/// Convergence and sweep controls for the rate-distortion solver.
struct BaSettings {
    int sweep_points = 60;
    double sweep_lo_factor = 1e-3; // times r / d_min
    double sweep_hi_factor = 1e3;
    double rel_obj_tol = 1e-9;     // relative free-energy change per iteration
    double duality_gap_tol = 1e-8; // early exit once ln(max_j T_j) certifies this
    double value_tol = 0.05;       // sanity cap on the certified suboptimality of the
                                   // knots used for interpolation (the certificate is
                                   // loose: negligible-mass directions dominate it)
    int max_iterations = 5000;
    int stall_iterations = 150;    // give up on a knot when the certificate stops improving
    double knot_rate_gap = 5e-4;   // refine brackets until adjacent knots differ by this
    int max_refinements_per_target = 12;
};

/// Alternating-minimization solver for R(d) of the discretized source f
/// under distortion |x - xhat|^r, reconstruction alphabet equal to the
/// source grid. Sweeps the Lagrange parameter geometrically, then
/// interpolates the (d, R) frontier at the requested targets. slb_nats is
/// filled from the grid entropy. Throws AccuracyError on non-convergence
/// and std::out_of_range for targets below the swept range.
RDCurve blahut_arimoto_rd(const GridDensity& f, double r, const std::vector<double>& d_targets,
                          const BaSettings& settings = {});

/// Full per-target report for a catalog source: Shannon lower bound,
/// Blahut-Arimoto rate, and every applicable test-channel upper bound.
RDCurve rd_curve(const DistributionSpec& spec, double r, const std::vector<double>& d_targets,
                 int ba_grid_n = 1024, const BaSettings& settings = {});

/// Covariance-constrained rate-distortion chain for products:
/// 0 <= R_cov(d) - SLB(d) = D(X||G_X) <= (n/2) ln(2 pi e c(n)),
/// with R_cov(d) = 0 when |K_X|^{1/n} <= d.
BoundReport covariance_rd_bounds(const ProductDistribution& pd, double d);

/// The vector gap bound of the r-th moment theorems, evaluated formula-side
/// on products: D(X||G_X) + n ln(alpha_r / sqrt(2 pi e)) (r in [1,2]) or
/// n ln(beta_r) (r > 2), plus (n/2) ln((||X||_2^2 / n) / |K_X|^{1/n}).
BoundReport rd_gap_bound_vector(const ProductDistribution& pd, double r, double d);

} // namespace lcb
