#include "hyperseries/ode_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace hyperseries {

namespace {

constexpr double min_step = 1e-14;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// PI controller exponents (Hairer & Wanner's dopri5 defaults).
constexpr double beta = 0.04;
constexpr double alpha = 0.2 - 0.75 * beta;
constexpr double safety = 0.9;
constexpr double fac_min = 0.2;
constexpr double fac_max = 10.0;

using Vec3 = Eigen::Vector3d;

enum class Guard { none, u_zero, singular_z };

Guard check_guards(const Vec3 &y, const OdeParams &p)
{
    if (!(std::abs(y(1)) >= near_zero_constant)) {
        return Guard::u_zero;
    }
    if (!(std::abs(y(0) * y(0) - p.delta_prime * p.delta_prime) >= near_singular_center)) {
        return Guard::singular_z;
    }
    return Guard::none;
}

Vec3 unguarded_rhs(const Vec3 &y, const OdeParams &p)
{
    const double tau = y(0);
    const double u = y(1);
    const double u1 = y(2);
    const double q = tau * tau - p.delta_prime * p.delta_prime;
    double u_pow = 1.0;
    for (int k = 0; k < p.n - 2; ++k) {
        u_pow *= u;
    }
    const double u2 = p.lambda / (p.n * q * u_pow) - u1 * u1 * (p.n - 1) / u - 2.0 * u1 * tau / q;
    return {1.0, u1, u2};
}

Termination to_termination(Guard g)
{
    return g == Guard::u_zero ? Termination::guard_u_zero : Termination::guard_singular_z;
}

} // namespace

const char *to_string(Termination t) noexcept
{
    switch (t) {
    case Termination::reached_end: return "reached_end";
    case Termination::guard_u_zero: return "guard_u_zero";
    case Termination::guard_singular_z: return "guard_singular_z";
    case Termination::step_underflow: return "step_underflow";
    }
    return "unknown";
}

Eigen::Vector3d rhs(const CauchyState &state, const OdeParams &p)
{
    validate(OperatorParams{p.n, p.delta_prime});
    const Vec3 y(state.tau, state.u, state.u1);
    switch (check_guards(y, p)) {
    case Guard::u_zero:
        raise(Errc::singular_evaluation, "|u| below 1e-8 (u guard)");
    case Guard::singular_z:
        raise(Errc::singular_evaluation, "|tau^2 - delta'^2| below 1e-6 (z guard)");
    case Guard::none:
        break;
    }
    return unguarded_rhs(y, p);
}

Trajectory::Trajectory(std::vector<TrajectorySample> samples, Tolerances tol, Termination termination)
    : samples_(std::move(samples)), tol_(tol), termination_(termination)
{
    if (samples_.empty()) {
        raise(Errc::invalid_argument, "a trajectory needs at least one sample");
    }
}

bool Trajectory::covers(double z) const
{
    const double lo = std::min(front().z, back().z);
    const double hi = std::max(front().z, back().z);
    return z >= lo && z <= hi;
}

Eigen::Vector2d Trajectory::interpolate(double z) const
{
    if (!covers(z)) {
        raise(Errc::out_of_range, "z=" + std::to_string(z) + " lies outside the integrated span");
    }
    if (samples_.size() == 1) {
        return {front().u, front().u1};
    }
    const bool forward = back().z > front().z;
    // First sample at or beyond z in the direction of integration.
    auto it = std::lower_bound(samples_.begin() + 1, samples_.end(), z, [forward](const TrajectorySample &s, double x) {
        return forward ? s.z < x : s.z > x;
    });
    if (it == samples_.end()) {
        it = samples_.end() - 1;
    }
    const auto &s1 = *it;
    const auto &s0 = *(it - 1);
    const double h = s1.z - s0.z;
    const double t = (z - s0.z) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return {h00 * s0.u + h10 * h * s0.u1 + h01 * s1.u + h11 * h * s1.u1,
            h00 * s0.u1 + h10 * h * s0.du1 + h01 * s1.u1 + h11 * h * s1.du1};
}

Trajectory integrate(const OdeParams &p, const CauchyState &init, double z_end, const Tolerances &tol)
{
    validate(OperatorParams{p.n, p.delta_prime});
    if (!std::isfinite(z_end) || z_end == init.tau) {
        raise(Errc::invalid_argument, "z_end must be finite and differ from the initial point");
    }
    Vec3 y(init.tau, init.u, init.u1);
    if (check_guards(y, p) != Guard::none) {
        raise(Errc::rejected_initial_condition, "initial state violates a singularity guard");
    }

    const double direction = z_end > init.tau ? 1.0 : -1.0;
    double h = 1e-4 * std::max(1.0, std::abs(init.tau));
    double err_old = 1e-4;
    Vec3 k1 = unguarded_rhs(y, p);

    std::vector<TrajectorySample> samples{{y(0), y(1), y(2), k1(2)}};
    auto finish = [&](Termination t) { return Trajectory(std::move(samples), tol, t); };

    while (true) {
        const double remaining = std::abs(z_end - y(0));
        if (remaining <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z_end))) {
            return finish(Termination::reached_end);
        }
        const bool last = h >= remaining;
        const double step = direction * std::min(h, remaining);

        std::array<Vec3, 7> k;
        k[0] = k1;
        Guard violated = Guard::none;
        auto eval = [&](const Vec3 &state, Vec3 &out) {
            const Guard g = check_guards(state, p);
            if (g != Guard::none) {
                violated = g;
                return false;
            }
            out = unguarded_rhs(state, p);
            return true;
        };

        Vec3 y_new;
        bool ok = eval(y + step * (a21 * k[0]), k[1])
                  && eval(y + step * (a31 * k[0] + a32 * k[1]), k[2])
                  && eval(y + step * (a41 * k[0] + a42 * k[1] + a43 * k[2]), k[3])
                  && eval(y + step * (a51 * k[0] + a52 * k[1] + a53 * k[2] + a54 * k[3]), k[4])
                  && eval(y + step * (a61 * k[0] + a62 * k[1] + a63 * k[2] + a64 * k[3] + a65 * k[4]), k[5]);
        if (ok) {
            y_new = y + step * (a71 * k[0] + a73 * k[2] + a74 * k[3] + a75 * k[4] + a76 * k[5]);
            if (last) {
                y_new(0) = z_end;
            }
            ok = eval(y_new, k[6]);
        }
        if (!ok) {
            h *= 0.5;
            if (h < min_step) {
                return finish(to_termination(violated));
            }
            continue;
        }

        const Vec3 err_vec = step * (e1 * k[0] + e3 * k[2] + e4 * k[3] + e5 * k[4] + e6 * k[5] + e7 * k[6]);
        double err = 0.0;
        for (int i = 1; i < 3; ++i) {
            const double sc = tol.abs + tol.rel * std::max(std::abs(y(i)), std::abs(y_new(i)));
            err += (err_vec(i) / sc) * (err_vec(i) / sc);
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            y = y_new;
            k1 = k[6];
            samples.push_back({y(0), y(1), y(2), k1(2)});
            const double fac = err == 0.0 ? fac_max
                                          : std::clamp(safety * std::pow(err, -alpha) * std::pow(err_old, beta),
                                                       fac_min, fac_max);
            err_old = std::max(err, 1e-4);
            h = std::abs(step) * fac;
        } else {
            h = std::abs(step) * std::max(fac_min, safety * std::pow(err, -0.2));
        }
        if (h < min_step) {
            return finish(Termination::step_underflow);
        }
    }
}

OracleReport compare_series_oracle(const EigenParams &p, int order, int n_samples, const Tolerances &tol)
{
    if (n_samples < 2) {
        raise(Errc::invalid_argument, "need at least two sample points");
    }
    // The center is the initial point of both trajectories.
    if (std::abs(p.a0) < near_zero_constant
        || std::abs(p.center * p.center - p.delta_prime * p.delta_prime) < near_singular_center) {
        raise(Errc::rejected_initial_condition, "the expansion center violates a singularity guard");
    }
    const auto series = eigen_coefficients(p, order);
    const auto slope = derivative(series);
    OracleReport report;
    report.order = order;
    report.samples = n_samples;
    report.radius = effective_radius(series, p);
    report.z_lo = p.center - 0.5 * report.radius;
    report.z_hi = p.center + 0.5 * report.radius;

    // Integrate exactly to every sample point, outward from the center in both
    // directions, so the comparison carries no interpolation error.
    const OdeParams ode = OdeParams::from(p);
    std::vector<double> zs(static_cast<std::size_t>(n_samples));
    for (int j = 0; j < n_samples; ++j) {
        zs[static_cast<std::size_t>(j)] = report.z_lo + (report.z_hi - report.z_lo) * j / (n_samples - 1);
    }
    auto compare = [&](double z, double u, double u1) {
        report.max_value_deviation = std::max(report.max_value_deviation, std::abs(evaluate(series, z) - u));
        report.max_derivative_deviation = std::max(report.max_derivative_deviation, std::abs(evaluate(slope, z) - u1));
    };
    auto sweep = [&](auto first, auto last) {
        CauchyState state{p.center, p.a0, p.a1};
        for (auto it = first; it != last; ++it) {
            if (*it != state.tau) {
                const auto leg = integrate(ode, state, *it, tol);
                if (leg.termination() != Termination::reached_end) {
                    raise(Errc::integration_failure,
                          std::string("oracle trajectory stopped early: ") + to_string(leg.termination()));
                }
                state = {leg.back().z, leg.back().u, leg.back().u1};
            }
            compare(state.tau, state.u, state.u1);
        }
    };
    const auto mid = std::lower_bound(zs.begin(), zs.end(), p.center);
    sweep(mid, zs.end());
    sweep(std::make_reverse_iterator(mid), zs.rend());
    return report;
}

} // namespace hyperseries
