#pragma once

// Independent numerical route to the eigenfunction: the explicit form
//
//   u'' = lambda / (n (z^2 - delta'^2) u^{n-2}) - (n-1) u'^2 / u - 2 z u' / (z^2 - delta'^2)
//
// integrated as the first-order system (tau, u, u1)' = F with an embedded
// Dormand-Prince 5(4) pair and PI step-size control.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "hyperseries/eigen_recursion.hpp"

namespace hyperseries {

/// Parameters of the explicit ODE. Unlike EigenParams, lambda = 0 is allowed.
struct OdeParams {
    int n = 2;
    double lambda = 1.0;
    double delta_prime = 1.0;

    static OdeParams from(const EigenParams &p) { return {p.n, p.lambda, p.delta_prime}; }
};

struct CauchyState {
    double tau = 0.0; ///< independent variable, identified with z
    double u = 1.0;
    double u1 = 0.0;  ///< du/dz
};

enum class Termination { reached_end, guard_u_zero, guard_singular_z, step_underflow };

const char *to_string(Termination t) noexcept;

struct Tolerances {
    double abs = 1e-12;
    double rel = 1e-10;
};

/// F(tau, u, u1). Throws Errc::singular_evaluation when |u| < 1e-8 or
/// |tau^2 - delta'^2| < 1e-6.
Eigen::Vector3d rhs(const CauchyState &state, const OdeParams &p);

struct TrajectorySample {
    double z;
    double u;
    double u1;
    double du1; ///< u'' at z, used by the Hermite interpolant
};

class Trajectory {
public:
    Trajectory(std::vector<TrajectorySample> samples, Tolerances tol, Termination termination);

    const std::vector<TrajectorySample> &samples() const noexcept { return samples_; }
    const Tolerances &tolerances() const noexcept { return tol_; }
    Termination termination() const noexcept { return termination_; }

    const TrajectorySample &front() const { return samples_.front(); }
    const TrajectorySample &back() const { return samples_.back(); }

    bool covers(double z) const;

    /// (u, u1) at z by cubic Hermite interpolation inside the accepted step
    /// that contains z. Errc::out_of_range outside the integrated span.
    Eigen::Vector2d interpolate(double z) const;

private:
    std::vector<TrajectorySample> samples_;
    Tolerances tol_;
    Termination termination_;
};

/// Integrates from init.tau toward z_end. Stops early (without throwing)
/// when a guard floor is reached or the step underflows 1e-14.
Trajectory integrate(const OdeParams &p, const CauchyState &init, double z_end, const Tolerances &tol = {});

struct OracleReport {
    double max_value_deviation = 0.0;      ///< max |series - trajectory|
    double max_derivative_deviation = 0.0; ///< max |series' - u1|
    double radius = 0.0;                   ///< effective radius used for the span
    double z_lo = 0.0;
    double z_hi = 0.0;
    int samples = 0;
    int order = 0;
};

/// Evaluates the eigen-series and its derivative at `n_samples` equally
/// spaced points of [center - R/2, center + R/2] (R = effective_radius) and
/// compares with trajectories integrated from (center, a0, a1).
OracleReport compare_series_oracle(const EigenParams &p, int order, int n_samples, const Tolerances &tol = {});

} // namespace hyperseries
