#pragma once

#include <functional>

#include "lcb/errors.hpp"

namespace lcb {

/// Tolerances for adaptive quadrature. All fields must be positive.
struct QuadratureSettings {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;

    void validate() const;
};

/// ln Gamma(z) for z > 0. Throws std::domain_error for z <= 0.
double log_gamma(double z);

/// Gamma(z)^{1/p} evaluated in log space; z > 0.
double gamma_pow(double z, double exponent);

/// Adaptive Gauss-Kronrod integration of f over (a, b).
///
/// Either endpoint may be infinite; infinite directions are mapped to a
/// finite interval with the substitution x = t / (1 - t^2). Deterministic:
/// identical inputs produce identical results bit for bit. Throws
/// AccuracyError (with best estimate and error bound) when the requested
/// tolerance is not reached within settings.max_subdivisions.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSettings& settings = {});

/// Integral of t^p * g(t) over (0, inf) for p > -1.
///
/// For p < 0 the singular part over (0,1) is computed with the substitution
/// u = t^{p+1}, which removes the singularity at 0 exactly.
double integrate_power_weighted(const std::function<double(double)>& g, double p,
                                const QuadratureSettings& settings = {});

} // namespace lcb
