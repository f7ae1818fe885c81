#pragma once

#include "lcb/distributions.hpp"
#include "lcb/vector_bounds.hpp"

namespace lcb {

/// Entropy powers of two independent summands and their sum, with the slack
/// of the forward inequality N(X+Y) >= N(X) + N(Y) and of the reverse bound
/// N(X+Y) <= reverse_constant * (N(X) + N(Y)).
struct EPIReport {
    double n_x;
    double n_y;
    double n_sum;
    double forward_slack;     // n_sum - (n_x + n_y)
    double reverse_constant;
    double reverse_slack;     // reverse_constant * (n_x + n_y) - n_sum
};

/// N(X) = exp(2 h / n) for h in nats.
double entropy_power(double h_nats, int n = 1);

/// Checks the forward inequality and the reverse bound with constant
/// pi e / 2 on a zero-mean log-concave pair. N(X+Y) comes from a grid
/// convolution of the two densities. Throws AccuracyError when the
/// convolution loses more than 1e-6 mass.
EPIReport verify_reverse_epi_scalar(const DistributionSpec& x, const DistributionSpec& y,
                                    int grid_n = 8192);

/// Reverse bound for a symmetric gamma-concave pair with common
/// gamma in (-1/3, 0): constant pi e (gamma+1)^2 / ((2 gamma+1)(3 gamma+1)).
EPIReport verify_reverse_epi_gamma(const DistributionSpec& x, const DistributionSpec& y,
                                   int grid_n = 8192);

/// Reverse bound for symmetric log-concave products with proportional
/// (diagonal) covariances: constant pi e^3 n^2 / (2 sqrt(2) (n+2)),
/// improving to pi e^3 when both products are unconditional. Entropy of the
/// sum adds across the per-coordinate convolutions.
EPIReport verify_reverse_epi_product(const ProductDistribution& x, const ProductDistribution& y,
                                     int grid_n = 8192);

} // namespace lcb
