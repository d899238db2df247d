#include "hyperseries/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hyperseries/polynomial.hpp"

namespace hyperseries {

namespace {

constexpr double pole_floor = 1e-10;

bool finite(complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

template <typename T>
T int_pow(T x, int k)
{
    T acc(1);
    for (int i = 0; i < k; ++i) {
        acc *= x;
    }
    return acc;
}

complex branch_factor(int n, int branch)
{
    const int m = n - 1;
    if (m == 1 || branch % m == 0) {
        return {1.0, 0.0};
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(branch) / m);
}

complex principal_root(complex base, int n)
{
    // arg in (-pi, pi]: a negative real base with a -0.0 imaginary part
    // would otherwise land on -pi.
    if (base.imag() == 0.0) {
        base.imag(0.0);
    }
    return n == 2 ? base : std::pow(base, 1.0 / static_cast<double>(n - 1));
}

complex checked_bracket(const TemporalParams &p, double t)
{
    const complex den = bracket(p, t);
    if (std::abs(den) < pole_floor) {
        std::string where;
        if (const auto tp = pole_time(p)) {
            where = " (pole near t=" + std::to_string(tp->real()) + ")";
        }
        raise(Errc::pole, "A1 - c exp(-(n-1) A2 t) vanishes at t=" + std::to_string(t) + where);
    }
    return den;
}

bool ascending(std::span<const double> xs)
{
    return std::adjacent_find(xs.begin(), xs.end(), [](double a, double b) { return !(a < b); }) == xs.end();
}

} // namespace

void validate(const TemporalParams &p)
{
    if (p.n < 2) {
        raise(Errc::invalid_argument, "n must be an integer >= 2");
    }
    if (!finite(p.A1) || !finite(p.A2) || !finite(p.c)) {
        raise(Errc::non_finite_input, "temporal parameters must be finite");
    }
    if (p.A1 == complex(0.0) || p.A2 == complex(0.0)) {
        raise(Errc::invalid_argument, "A1 and A2 must be nonzero");
    }
}

complex bracket(const TemporalParams &p, double t)
{
    return p.A1 - p.c * std::exp(-static_cast<double>(p.n - 1) * p.A2 * t);
}

std::optional<complex> pole_time(const TemporalParams &p)
{
    if (p.c == complex(0.0)) {
        return std::nullopt;
    }
    return -std::log(p.A1 / p.c) / (static_cast<double>(p.n - 1) * p.A2);
}

complex f_closed_form(const TemporalParams &p, double t)
{
    validate(p);
    const complex base = -p.A2 / checked_bracket(p, t);
    return principal_root(base, p.n) * branch_factor(p.n, p.branch);
}

double f_closed_form_real(const TemporalParams &p, double t)
{
    validate(p);
    if (p.A1.imag() != 0.0 || p.A2.imag() != 0.0 || p.c.imag() != 0.0) {
        raise(Errc::invalid_argument, "real mode needs real A1, A2 and c");
    }
    const double base = (-p.A2 / checked_bracket(p, t)).real();
    const int m = p.n - 1;
    if (m == 1) {
        return base;
    }
    if (base < 0.0) {
        if (m % 2 == 0) {
            raise(Errc::branch, "even root of a negative value; use complex mode");
        }
        return -std::pow(-base, 1.0 / m);
    }
    return std::pow(base, 1.0 / m);
}

complex f_derivative(const TemporalParams &p, double t)
{
    const complex f = f_closed_form(p, t);
    const complex ce = p.c * std::exp(-static_cast<double>(p.n - 1) * p.A2 * t);
    return (-p.A2 * ce / (p.A1 - ce)) * f;
}

complex ode_residual(const TemporalParams &p, double t)
{
    const complex f = f_closed_form(p, t);
    return f_derivative(p, t) - p.A1 * int_pow(f, p.n) - p.A2 * f;
}

complex c_from_initial(int n, complex A1, complex A2, complex f0)
{
    if (!finite(f0) || f0 == complex(0.0)) {
        raise(Errc::invalid_initial, "f0 must be finite and nonzero");
    }
    return A1 + A2 / int_pow(f0, n - 1);
}

TemporalParams with_initial_value(int n, complex A1, complex A2, complex f0)
{
    TemporalParams p{n, A1, A2, c_from_initial(n, A1, A2, f0), 0};
    validate(p);
    const complex principal = f_closed_form(p, 0.0);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < std::max(1, n - 1); ++k) {
        const double miss = std::abs(principal * branch_factor(n, k) - f0);
        if (miss < best) {
            best = miss;
            p.branch = k;
        }
    }
    return p;
}

std::optional<std::pair<double, double>> trusted_eta_range(const EigenParams &ep, int order)
{
    const auto g = eigen_coefficients(ep, order);
    const double radius = 0.5 * effective_radius(g, ep);
    const double z_lo = std::max(ep.center - radius, ep.delta_prime);
    const double z_hi = ep.center + radius;
    if (!(z_hi > z_lo)) {
        return std::nullopt;
    }
    const auto op = ep.op();
    const double lo = eta_of_z(op, z_lo);
    const double hi = eta_of_z(op, z_hi);
    // Pull the ends in slightly so they survive the z round trip inside the disk.
    const double margin = 1e-6 * (hi - lo);
    return std::pair{lo + margin, hi - margin};
}

GridSolution separable_solution(const TemporalParams &tp, const EigenParams &ep, std::span<const double> eta_grid,
                                std::span<const double> t_grid, const SeparableOptions &options)
{
    validate(tp);
    validate(ep);
    if (tp.n != ep.n) {
        raise(Errc::inconsistent_parameters, "temporal and spatial exponents differ");
    }
    if (std::abs(tp.A1 - complex(ep.lambda)) > 1e-12 * std::max(1.0, std::abs(ep.lambda))) {
        raise(Errc::inconsistent_parameters, "A1 must equal lambda");
    }
    if (eta_grid.empty() || t_grid.empty() || !ascending(eta_grid) || !ascending(t_grid)) {
        raise(Errc::invalid_argument, "grids must be non-empty and strictly ascending");
    }
    if (!(eta_grid.front() > 0.0) || !(t_grid.front() >= 0.0)) {
        raise(Errc::invalid_argument, "need eta > 0 and t >= 0");
    }

    const auto op = ep.op();
    const auto g = eigen_coefficients(ep, options.order);
    GridSolution out;
    out.trusted_radius = 0.5 * effective_radius(g, ep);
    for (double eta : eta_grid) {
        if (std::abs(z_of_eta(op, eta) - ep.center) > out.trusted_radius) {
            raise(Errc::out_of_radius, "eta=" + std::to_string(eta) + " maps outside the trusted disk");
        }
    }

    // Exact residual polynomial of the truncated eigenfunction, in w = z - center.
    const Polynomial<double> g_poly(g.coeffs());
    const auto spatial_residual = apply_algebraic_operator(g_poly, op, ep.center) - ep.lambda * g_poly;

    const auto rows = static_cast<Eigen::Index>(eta_grid.size());
    const auto cols = static_cast<Eigen::Index>(t_grid.size());
    out.eta_grid = Eigen::Map<const Eigen::VectorXd>(eta_grid.data(), rows);
    out.t_grid = Eigen::Map<const Eigen::VectorXd>(t_grid.data(), cols);
    out.values.resize(rows, cols);
    out.residual = Eigen::MatrixXd::Zero(rows, cols);

    auto spatial = [&](double eta) { return evaluate(g, z_of_eta(op, eta)); };
    auto u = [&](double eta, double t) { return f_closed_form(tp, t) * spatial(eta); };

    for (Eigen::Index j = 0; j < cols; ++j) {
        const complex f = f_closed_form(tp, t_grid[j]);
        for (Eigen::Index i = 0; i < rows; ++i) {
            out.values(i, j) = f * spatial(eta_grid[i]);
        }
    }

    auto pde_residual = [&](double eta, double t, double h_eta, double h_t) {
        const complex dudt = (u(eta, t + h_t) - u(eta, t - h_t)) / (2.0 * h_t);
        const complex lap = radial_laplacian_fd([&](double x) { return int_pow(u(x, t), tp.n); }, eta, h_eta);
        return dudt - tp.A2 * u(eta, t) - lap;
    };

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const auto interior = [](Eigen::Index k, Eigen::Index size) { return size < 3 || (k > 0 && k + 1 < size); };
    for (Eigen::Index j = 0; j < cols; ++j) {
        if (!interior(j, cols)) {
            continue;
        }
        const double t = t_grid[j];
        const double h_t = options.step_scale * std::max(1.0, std::abs(t));
        const complex f = f_closed_form(tp, t);
        const double temporal_defect = std::abs(ode_residual(tp, t));
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (!interior(i, rows)) {
                continue;
            }
            const double eta = eta_grid[i];
            const double h_eta = options.step_scale * std::max(1.0, std::abs(eta));
            const complex fine = pde_residual(eta, t, h_eta, h_t);
            const complex coarse = pde_residual(eta, t, 2.0 * h_eta, 2.0 * h_t);
            const double r = std::abs(fine);
            out.residual(i, j) = r;
            out.residual_max = std::max(out.residual_max, r);

            const double g_val = spatial(eta);
            const double w = z_of_eta(op, eta) - ep.center;
            const double truncation =
                std::pow(std::abs(f), tp.n) * std::abs(evaluate(spatial_residual, w)) + std::abs(g_val) * temporal_defect;
            const double magnitude = std::abs(int_pow(out.values(i, j), tp.n));
            const double rounding = 8.0 * eps * (magnitude / (h_eta * h_eta) + std::abs(out.values(i, j)) / h_t);
            out.truncation_bound = std::max(out.truncation_bound, truncation);
            out.stencil_bound = std::max(out.stencil_bound, std::abs(fine - coarse) + rounding);
        }
    }
    out.tolerance_budget = out.truncation_bound + out.stencil_bound;
    return out;
}

} // namespace hyperseries
