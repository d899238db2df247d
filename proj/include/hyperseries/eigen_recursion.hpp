#pragma once

// Power-series eigenfunctions of d/dz[(z^2 - delta'^2) d(u^n)/dz] = lambda u.
//
// Given u(center) = a0 and u'(center) = a1, every further Taylor coefficient
// is fixed: coefficient i of L[u] - lambda u is affine in a_{i+2} with slope
//   q(center) (i+1)(i+2) n a0^{n-1},
// so each a_{i+2} follows from one solve. At center 0 this reproduces the
// classical closed recursion (see literal_recursion_coefficients()).

#include <optional>

#include "hyperseries/hyperbolic_operator.hpp"
#include "hyperseries/series.hpp"

namespace hyperseries {

/// Lower bound on |center^2 - delta'^2| for a nonzero expansion center.
inline constexpr double near_singular_center = 1e-6;

struct EigenParams {
    int n = 2;
    double lambda = 1.0;       ///< eigenvalue, nonzero
    double delta_prime = 1.0;
    double a0 = 1.0;           ///< u(center)
    double a1 = 0.0;           ///< u'(center)
    double center = 0.0;

    OperatorParams op() const { return {n, delta_prime}; }
};

void validate(const EigenParams &p);

/// a_2 = -lambda / (2 delta'^2 n a0^{n-2}) - (n-1) a1^2 / (2 a0), unvalidated.
double a2_closed_form(int n, double lambda, double delta_prime, double a0, double a1);

/// Closed form for a_2; only meaningful for center 0 (Errc::wrong_center otherwise).
double a2_closed_form(const EigenParams &p);

/// Taylor coefficients a_0 ... a_order of the eigenfunction about p.center.
Series eigen_coefficients(const EigenParams &p, int order);

/// The same coefficients from the center-0 recursion written out term by
/// term with b = u^n from the Miller recurrence. It ignores p.center, so
/// away from zero it describes a different function; kept as a reference
/// implementation and a diagnostic.
Series literal_recursion_coefficients(const EigenParams &p, int order);

/// True iff the literal center-0 recursion agrees with eigen_coefficients()
/// at p.center to `rel_tol`.
bool literal_formula_agrees(const EigenParams &p, int order, double rel_tol = 1e-12);

struct ResidualReport {
    double max_abs = 0.0;   ///< max |(L[u] - lambda u)_i| over i <= order - 2
    double scale = 1.0;     ///< max(1, |a_i|, |b_i|)
    Eigen::Index worst_index = 0;

    bool within(double rel_tol) const { return max_abs <= rel_tol * scale; }
};

/// Coefficientwise residual of L[u] - lambda u on the orders u determines.
ResidualReport eigen_residual(const Series &u, const EigenParams &p);

/// Ratio-test radius estimate from the last eight coefficients, falling
/// back to Cauchy-Hadamard when most ratios are undefined.
double radius_estimate(const Series &s);

/// radius_estimate() capped by the root-test radius of the last 8 terms, then
/// clipped to the distance from the center to the nearest z = +-delta'.
double effective_radius(const Series &s, const EigenParams &p);

/// Recomputes the coefficients on this and a second thread and compares bitwise.
bool determinism_check(const EigenParams &p, int order);

} // namespace hyperseries
