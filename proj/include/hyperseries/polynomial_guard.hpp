#pragma once

// No polynomial of degree m >= 1 solves L[P] = lambda P: L raises the degree
// to n m > m and its leading coefficient n m (n m + 1) l_m(P)^n never
// vanishes. These functions evaluate both laws on concrete polynomials.

#include <cstdint>
#include <vector>

#include "hyperseries/hyperbolic_operator.hpp"
#include "hyperseries/polynomial.hpp"

namespace hyperseries {

using Poly = Polynomial<double>;

/// Throws unless deg P >= 1 (the leading coefficient is nonzero by construction).
void validate_guard_polynomial(const Poly &p);

/// l_m(P), the coefficient of z^m for m = deg P.
double leading_coeff(const Poly &p);

struct DegreeLaw {
    Eigen::Index computed;
    Eigen::Index predicted; ///< n m
};

DegreeLaw operator_degree_law(const Poly &p, const OperatorParams &params);

struct LeadingCoeffLaw {
    double lhs; ///< leading coefficient of L[P]
    double rhs; ///< n m (n m + 1) l_m(P)^n
};

LeadingCoeffLaw leading_coeff_law(const Poly &p, const OperatorParams &params);

/// Coefficient of z^{n m} in L[P] - lambda P; never zero.
double nonexistence_witness(const Poly &p, const OperatorParams &params, double lambda);

struct GuardSweepResult {
    int polynomials = 0;
    int degree_failures = 0;
    int zero_witnesses = 0;
    double max_leading_rel_error = 0.0;
    double max_witness_rel_error = 0.0;
    double min_witness_ratio = 0.0; ///< min |witness| / (n m (n m + 1) |l_m|^n)
};

/// Random polynomials of degree 1..max_degree with coefficients in [-2, 2]
/// and |l_m| >= 0.1, n drawn from {2, 3}, delta' from {0.5, 1, 3}.
GuardSweepResult guard_sweep(std::uint64_t seed, int count, int max_degree = 5);

} // namespace hyperseries
