#pragma once

#include <optional>

#include "lcb/bound_report.hpp"
#include "lcb/distributions.hpp"
#include "lcb/vector_bounds.hpp"

namespace lcb {

/// Capacity of the Gaussian channel with the same noise power:
/// 0.5 ln(1 + P / Var Z), in nats.
double gaussian_capacity(double var_z, double p);

/// Controls for the power-constrained Blahut-Arimoto capacity solver.
struct CapacitySettings {
    int sweep_points = 20;         // geometric multiplier sweep
    int refine_points = 12;        // extra points across the feasibility bracket
    double duality_gap_tol = 1e-8; // early exit when the optimality certificate closes
    int max_iterations = 3000;     // per multiplier; iteration also ends when the
                                   // (power, mutual information) pair stops moving
};

struct CapacityResult {
    double capacity_nats = 0.0;
    double achieved_power = 0.0; // E[X^2] at the reported point
    double multiplier = 0.0;     // input-cost multiplier there
    double certified_gap = 0.0;  // duality bound on the reported point's suboptimality
                                 // (loose: dominated by negligible-mass tail inputs)
    double boundary_mass = 0.0;  // input mass on the two extreme grid points
    int iterations = 0;
};

/// Constrained capacity sup I(X; X+Z) over inputs on the uniform grid
/// spanning [-input_extent, input_extent] (step taken from the noise grid)
/// with E[X^2] <= p. The power constraint enters through a Lagrangian
/// sweep over the input-cost multiplier; the reported point is feasible.
CapacityResult blahut_arimoto_capacity_detailed(const GridDensity& noise_grid, double p,
                                                double input_extent,
                                                const CapacitySettings& settings = {});

double blahut_arimoto_capacity(const GridDensity& noise_grid, double p, double input_extent,
                               const CapacitySettings& settings = {});

/// Mutual information h(X*+Z) - h(Z) for a Gaussian input X* of variance p,
/// computed by grid convolution against the noise grid.
double gaussian_input_mi(const GridDensity& noise_grid, double p);

/// Capacity gap chain for scalar log-concave noise:
/// gaussian_capacity <= C_Z(P) <= gaussian_capacity + ln sqrt(pi e / 2);
/// measured side is the Blahut-Arimoto capacity.
BoundReport capacity_gap_bound(const DistributionSpec& noise, double p, int grid_n = 512,
                               const CapacitySettings& settings = {});

/// Vector capacity chain, formula-level on product noise:
/// 0 <= C_Z(P) - (n/2) ln(1 + P/|K_Z|^{1/n})
///   <= (n/2) ln(2 pi e c(n) ((||Z||_2^2/n + P) / (|K_Z|^{1/n} + P))).
BoundReport capacity_vector_bound(const ProductDistribution& noise, double p);

/// Universal joint source-channel distortion floor for log-concave source
/// and noise: d >= (2/(pi e))^2 sigma^2 / (1 + snr).
double jscc_converse(double sigma2, double snr);

/// The matched Gaussian benchmark sigma^2 / (1 + snr), for context.
double jscc_gaussian_opta(double sigma2, double snr);

/// One evaluated operating point of an additive-noise channel.
struct CapacityPoint {
    double power = 0.0;
    DistributionSpec noise;
    double lower_gaussian_nats = 0.0;
    std::optional<double> ba_nats;
    std::optional<double> gaussian_input_mi_nats;
    double upper_nats = 0.0;
};

CapacityPoint capacity_point(const DistributionSpec& noise, double power, int grid_n = 512,
                             const CapacitySettings& settings = {});

} // namespace lcb
