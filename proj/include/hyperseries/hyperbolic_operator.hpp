#pragma once

// The change of variables z = delta' cosh(eta) and the algebraic form of
// the radial operator
//
//   (1/sinh eta) d/deta ( sinh eta d(u^n)/deta ) = d/dz [ (z^2 - delta'^2) d(u^n)/dz ].
//
// apply_algebraic_operator() works on truncated series about any center a,
// re-expanding q(z) = z^2 - delta'^2 as q(a) + 2a w + w^2 with w = z - a.
// The Polynomial overload is the exact, untruncated counterpart.

#include <cmath>
#include <optional>
#include <string>

#include "hyperseries/error.hpp"
#include "hyperseries/polynomial.hpp"
#include "hyperseries/series.hpp"

namespace hyperseries {

struct OperatorParams {
    int n = 2;                 ///< nonlinearity exponent, n >= 2
    double delta_prime = 1.0;  ///< scale of z = delta' cosh(eta), > 0
};

void validate(const OperatorParams &p);

double z_of_eta(const OperatorParams &p, double eta);
double eta_of_z(const OperatorParams &p, double z);

/// Coefficients of q(z) = z^2 - delta'^2 about `center`.
inline Series quadratic_factor(const OperatorParams &p, double center)
{
    return Series({center * center - p.delta_prime * p.delta_prime, 2.0 * center, 1.0}, center);
}

/// L[u] = d/dz[(z^2 - delta'^2) d(u^n)/dz] for a truncated series of order
/// N >= 2; the result has order N - 2, the last order u determines.
template <typename Scalar>
TruncatedSeries<Scalar> apply_algebraic_operator(const TruncatedSeries<Scalar> &u, const OperatorParams &p)
{
    validate(p);
    if (u.order() < 2) {
        raise(Errc::insufficient_order, "operator needs a series of order >= 2, got " + std::to_string(u.order()));
    }
    const auto N = u.order();
    const auto un = power(u, p.n, N);
    // q built in Scalar so a wider type also carries delta'^2 exactly.
    const Scalar c(u.center());
    const Scalar d(p.delta_prime);
    const TruncatedSeries<Scalar> qs({c * c - d * d, Scalar(2) * c, Scalar(1)}, u.center());
    return derivative(multiply(qs, derivative(un), N - 1));
}

/// Exact L[P] for a polynomial in w = z - center (no truncation, degree n m).
template <typename Scalar>
Polynomial<Scalar> apply_algebraic_operator(const Polynomial<Scalar> &poly, const OperatorParams &p,
                                            double center = 0.0)
{
    validate(p);
    const double d2 = p.delta_prime * p.delta_prime;
    const Polynomial<Scalar> q{Scalar(center * center - d2), Scalar(2.0 * center), Scalar(1.0)};
    return derivative(q * derivative(pow(poly, p.n)));
}

template <typename Scalar>
struct EtaValue {
    Scalar value;
    double z;
    bool trusted; ///< false when z lies outside the caller-supplied trusted disk
};

/// Value of a z-domain series at z(eta). With `trusted_radius` set, the
/// result is flagged untrusted (but still computed) when |z - center| exceeds it.
template <typename Scalar>
EtaValue<Scalar> eval_in_eta(const TruncatedSeries<Scalar> &u, const OperatorParams &p, double eta,
                             std::optional<double> trusted_radius = std::nullopt)
{
    const double z = z_of_eta(p, eta);
    const bool trusted = !trusted_radius || std::abs(z - u.center()) <= *trusted_radius;
    return {Scalar(evaluate(u, z)), z, trusted};
}

/// Default finite-difference step for eta-stencils.
inline double default_eta_step(double eta) { return 1e-4 * std::max(1.0, std::abs(eta)); }

/// Conservative second-order stencil for (1/sinh eta) d/deta (sinh eta dG/deta).
template <typename G>
auto radial_laplacian_fd(G &&big_g, double eta, double h)
{
    if (!(h > 0.0) || !(eta > h)) {
        raise(Errc::step_too_large, "need eta > h > 0 (eta=" + std::to_string(eta) + ", h=" + std::to_string(h) + ")");
    }
    const auto g_minus = big_g(eta - h);
    const auto g_mid = big_g(eta);
    const auto g_plus = big_g(eta + h);
    const double s_plus = std::sinh(eta + 0.5 * h);
    const double s_minus = std::sinh(eta - 0.5 * h);
    return (s_plus * (g_plus - g_mid) - s_minus * (g_mid - g_minus)) / (h * h * std::sinh(eta));
}

/// (1/sinh eta) d/deta(sinh eta d(g^n)/deta) - lambda g(eta), by central
/// differences with O(h^2) truncation error.
template <typename F>
auto hyperbolic_residual(F &&g, const OperatorParams &p, double lambda, double eta, double h)
{
    validate(p);
    auto gn = [&](double x) {
        auto v = g(x);
        decltype(v) acc(1);
        for (int k = 0; k < p.n; ++k) {
            acc *= v;
        }
        return acc;
    };
    return radial_laplacian_fd(gn, eta, h) - lambda * g(eta);
}

} // namespace hyperseries
