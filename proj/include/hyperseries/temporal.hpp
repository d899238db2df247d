#pragma once

// Closed-form solutions of f' = A1 f^n + A2 f,
//
//   f(t) = [ -A2 / (A1 - c exp(-(n-1) A2 t)) ]^{1/(n-1)},
//
// and the separable solutions u(eta, t) = f(t) g(eta) of
//   du/dt - A2 u = Delta_H u^n,
// where g is an eigenfunction with eigenvalue lambda = A1. A2 = -1 gives the
// reactive diffusion equation, A2 = i omega/alpha the periodic one.

#include <complex>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "hyperseries/eigen_recursion.hpp"

namespace hyperseries {

using complex = std::complex<double>;

struct TemporalParams {
    int n = 2;
    complex A1{1.0, 0.0};
    complex A2{-1.0, 0.0};
    complex c{0.0, 0.0};
    /// Root branch: f is the principal (n-1)-th root times exp(2 pi i branch/(n-1)).
    int branch = 0;
};

void validate(const TemporalParams &p);

/// A2 for the periodic equation, i omega/alpha.
inline complex periodic_rate(double omega_over_alpha) { return {0.0, omega_over_alpha}; }

/// A1 - c exp(-(n-1) A2 t).
complex bracket(const TemporalParams &p, double t);

/// A t with c exp(-(n-1) A2 t) = A1 (principal logarithm), if c != 0.
std::optional<complex> pole_time(const TemporalParams &p);

/// f(t) on the configured branch. Errc::pole when |bracket| < 1e-10.
complex f_closed_form(const TemporalParams &p, double t);

/// Real-only evaluation: parameters must be real, odd roots of negative
/// values are taken real, and an even root of a negative value raises
/// Errc::branch. The branch index is ignored.
double f_closed_form_real(const TemporalParams &p, double t);

/// f'(t) = [-A2 c e / (A1 - c e)] f(t), e = exp(-(n-1) A2 t).
complex f_derivative(const TemporalParams &p, double t);

/// f' - A1 f^n - A2 f.
complex ode_residual(const TemporalParams &p, double t);

/// c = A1 + A2 / f0^{n-1}, so that the closed form passes through f0 at t = 0.
complex c_from_initial(int n, complex A1, complex A2, complex f0);

/// Parameters through f0 at t = 0, with the branch chosen so that
/// f_closed_form(result, 0) == f0.
TemporalParams with_initial_value(int n, complex A1, complex A2, complex f0);

struct GridSolution {
    Eigen::VectorXd eta_grid;
    Eigen::VectorXd t_grid;
    Eigen::MatrixXcd values;       ///< values(i, j) = u(eta_i, t_j)
    Eigen::MatrixXd residual;      ///< |PDE residual| at interior points, zero elsewhere
    double residual_max = 0.0;
    double truncation_bound = 0.0; ///< max |f|^n |L[g_N] - lambda g_N| + |g| |ode residual|
    double stencil_bound = 0.0;    ///< Richardson estimate of the O(h^2) stencil error plus rounding
    double tolerance_budget = 0.0; ///< truncation_bound + stencil_bound
    double trusted_radius = 0.0;   ///< half the effective radius of the eigen-series
};

struct SeparableOptions {
    int order = 32;
    double step_scale = 1e-4; ///< h_eta = h_t = step_scale * max(1, |x|)
};

/// The trusted eta-interval [lo, hi] of the eigenfunction: z(eta) within
/// half the effective radius of its series and above delta', shrunk by a
/// relative 1e-6 so that both ends test as inside.
std::optional<std::pair<double, double>> trusted_eta_range(const EigenParams &ep, int order);

/// u(eta_i, t_j) = f(t_j) g(eta_i) with a finite-difference residual report
/// of du/dt - A2 u - Delta_H u^n. Requires A1 == lambda and matching n.
GridSolution separable_solution(const TemporalParams &tp, const EigenParams &ep, std::span<const double> eta_grid,
                                std::span<const double> t_grid, const SeparableOptions &options = {});

} // namespace hyperseries
