#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lcb/errors.hpp"

namespace lcb {

/// A probability density sampled on a uniform grid. The common currency for
/// entropy, divergence, convolution and Blahut-Arimoto work.
///
/// Invariants: values are nonnegative and the trapezoid-rule mass is 1
/// within 1e-6. Abscissas are x_i = x_min + i * step.
class GridDensity {
public:
    GridDensity(double x_min, double step, std::vector<double> values);

    /// Rescales the given samples to unit trapezoid mass, then constructs.
    static GridDensity normalized(double x_min, double step, std::vector<double> values);

    double x_min() const noexcept { return x_min_; }
    double step() const noexcept { return step_; }
    double x_max() const noexcept { return x_min_ + step_ * static_cast<double>(size() - 1); }
    double x(std::size_t i) const noexcept { return x_min_ + step_ * static_cast<double>(i); }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Trapezoid-rule mass (endpoint samples at half weight).
    double mass() const;

    /// Trapezoid-rule integral of x -> g(i) against this density's weights.
    /// g receives the sample index.
    double weighted_sum(const std::function<double(std::size_t)>& g) const;

    double max_value() const;

private:
    double x_min_;
    double step_;
    std::vector<double> values_;
};

/// Differential entropy -int f ln f in nats, with 0 ln 0 := 0. The grid is
/// renormalized by its mass before evaluation.
double entropy_of_grid(const GridDensity& f);

/// D(f || G) in nats, where G is the zero-mean Gaussian whose second moment
/// matches the grid's second moment about 0: 0.5 ln(2 pi e m2) - h(f).
double kl_to_gaussian(const GridDensity& f);

/// Density of the sum of independent variables with densities f and g.
/// Requires matching steps; the output covers the Minkowski sum of the
/// supports and is renormalized to unit mass.
GridDensity convolve(const GridDensity& f, const GridDensity& g);

/// Mass of the raw discrete convolution before renormalization; deviation
/// from 1 measures truncation loss in the inputs.
double convolution_mass(const GridDensity& f, const GridDensity& g);

/// (int |x - center|^p f)^{1/p} for p > -1. For |p| < 1e-8 returns the
/// limiting geometric-mean form exp(E log |X - center|).
double moment_of_grid(const GridDensity& f, double p, double center);

double mean_of_grid(const GridDensity& f);
double variance_of_grid(const GridDensity& f);
double second_moment_of_grid(const GridDensity& f);

} // namespace lcb
