#pragma once

#include <vector>

#include "lcb/bound_report.hpp"
#include "lcb/distributions.hpp"

namespace lcb {

/// alpha_p = 2 e^{1/p} Gamma(1 + 1/p) p^{1/p}, the constant of the maximum
/// entropy law under a p-th absolute moment constraint. p > 0.
double alpha(double p);

/// Maximum-entropy upper bound h(X) <= ln(alpha_p ||X||_p), in nats.
double entropy_upper(const DistributionSpec& spec, double p);

/// Moment lower bound for symmetric log-concave laws:
/// h(X) >= ln(2 ||X||_p) - (1/p) ln Gamma(p+1), valid for p > -1.
/// At p = 2 the tightened form ln(2 ||X||_2) is returned.
double entropy_lower_symmetric(const DistributionSpec& spec, double p);

/// Centered-moment lower bound for general log-concave laws, p >= 1:
/// h(X) >= ln(2 ||X - E X||_p) - (1/p) ln Gamma(p+1);
/// at p = 2 the variance form ln(2 sqrt(Var X)).
double entropy_lower_general(const DistributionSpec& spec, double p);

/// Pointwise density bound f_X(x) <= Gamma(p+1)^{1/p} / (2 ||X||_p) for
/// symmetric log-concave laws; measured side is the grid maximum of f_X.
BoundReport density_max_bound(const DistributionSpec& spec, double p, int grid_n = 4096);

/// Moment comparison for symmetric log-concave laws, -1 < p <= q:
/// ||X||_q / Gamma(q+1)^{1/q} <= ||X||_p / Gamma(p+1)^{1/p}, plus the
/// sandwich ||X||_p <= ||X||_q <= (Gamma(q+1)^{1/q}/Gamma(p+1)^{1/p}) ||X||_p.
BoundReport moment_comparison_symmetric(const DistributionSpec& spec, double p, double q);

/// Factor-2 comparison on centered moments of general log-concave laws,
/// 1 <= p <= q.
BoundReport moment_comparison_general(const DistributionSpec& spec, double p, double q);

/// Delta_p = ln(Gamma(p+1)^{1/p}/sqrt(2) * ||X||_2/||X||_p), with the
/// p = 2 branch equal to -ln sqrt(2).
double delta_p(const DistributionSpec& spec, double p);

/// D(X || G_X) against the cap ln sqrt(pi e) + Delta_p (p = 2: ln sqrt(pi e / 2)).
/// Measured side comes from the grid divergence; spec must be zero-mean
/// log-concave (symmetric allows p > -1, general requires p >= 1).
BoundReport relative_entropy_bound(const DistributionSpec& spec, double p, int grid_n = 4096);

/// Which normalization the Borell moment functional uses on [0, inf):
/// half_density is the symmetric density itself (F(0) = 1/2, F(-1) = f_X(0));
/// conditional is the density of |X|, i.e. 2 f_X (F(0) = 1, F(-1) = 2 f_X(0)).
enum class KpbConvention { half_density, conditional };

struct KpbPoint {
    double r;
    double value;
};

struct KpbCurve {
    std::vector<KpbPoint> points;
    double at_minus_one; // boundary value from the layer-cake identity
};

/// F(r) = int_0^inf x^r f(x) dx / Gamma(r+1) on the given r grid
/// (r > -1 + 1e-3), for symmetric log-concave specs. F is log-concave in r.
KpbCurve kpb_F(const DistributionSpec& spec, const std::vector<double>& r_grid,
               KpbConvention convention = KpbConvention::conditional);

/// Moment lower bound for symmetric gamma-concave laws, gamma in (-1, 0),
/// p in (-1, -1 - 1/gamma):
/// h(X) >= ln( 2||X||_p / Gamma(p+1)^{1/p}
///             * Gamma(a-1)^{1+1/p} / (Gamma(a) Gamma(a-p-1)^{1/p}) ), a = -1/gamma.
double entropy_lower_gamma_concave(const DistributionSpec& spec, double p);

} // namespace lcb
