#include "hyperseries/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperseries/hyperbolic_operator.hpp"
#include "hyperseries/ode_oracle.hpp"
#include "hyperseries/polynomial_guard.hpp"
#include "hyperseries/series.hpp"
#include "hyperseries/temporal.hpp"

namespace hyperseries {

namespace {

// Per-check seed offsets keep the random streams of different checks apart.
enum : std::uint64_t {
    miller_stream = 1,
    a2_stream = 2,
    residual_stream = 3,
    center0_stream = 4,
    oracle_stream = 5,
    guard_stream = 6,
    temporal_stream = 7,
};

std::uint64_t stream(std::uint64_t seed, std::uint64_t id) { return seed * 0x9E3779B97F4A7C15ull + id; }

Check make_check(std::string name, double max_error, double tolerance, bool pass, std::string detail = {})
{
    return {std::move(name), max_error, tolerance, pass, std::move(detail)};
}

double rel_error(double x, double ref)
{
    if (x == ref) {
        return 0.0;
    }
    return std::abs(x - ref) / std::max(std::abs(ref), std::numeric_limits<double>::min());
}

constexpr int residual_order = 16;
constexpr int suite_size = 100;
constexpr double perturbation = 1e-4;

} // namespace

EigenParams random_eigen_params(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> n_dist(2, 4);
    std::uniform_real_distribution<double> lambda_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> delta_dist(0.5, 2.0);
    std::uniform_real_distribution<double> a0_dist(0.5, 2.0);
    std::uniform_real_distribution<double> a1_dist(-1.0, 1.0);
    std::uniform_real_distribution<double> offset_dist(0.5, 2.0);
    std::uniform_int_distribution<int> center_kind(0, 2);
    std::bernoulli_distribution sign(0.5);

    EigenParams p;
    p.n = n_dist(rng);
    do {
        p.lambda = lambda_dist(rng);
    } while (std::abs(p.lambda) < 1e-3);
    p.delta_prime = delta_dist(rng);
    p.a0 = (sign(rng) ? 1.0 : -1.0) * a0_dist(rng);
    p.a1 = a1_dist(rng);
    switch (center_kind(rng)) {
    case 0: p.center = 0.0; break;
    case 1: p.center = p.delta_prime + offset_dist(rng); break;
    default: p.center = -(p.delta_prime + offset_dist(rng)); break;
    }
    return p;
}

std::vector<EigenParams> random_eigen_suite(std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::vector<EigenParams> suite;
    suite.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        suite.push_back(random_eigen_params(rng));
    }
    return suite;
}

Check check_miller_recurrence(std::uint64_t seed)
{
    constexpr double tol = 1e-12;
    std::mt19937_64 rng(stream(seed, miller_stream));
    std::uniform_int_distribution<int> order_dist(1, 12);
    std::uniform_int_distribution<int> n_dist(2, 5);
    std::uniform_real_distribution<double> a0_dist(0.1, 10.0);
    std::uniform_real_distribution<double> coeff_dist(-1.0, 1.0);
    std::bernoulli_distribution sign(0.5);

    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int order = order_dist(rng);
        const int n = n_dist(rng);
        Coefficients<double> c(order + 1);
        c(0) = (sign(rng) ? 1.0 : -1.0) * a0_dist(rng);
        for (int i = 1; i <= order; ++i) {
            c(i) = coeff_dist(rng);
        }
        const Series s(c);
        // A truncated series of order N determines its power only through order N.
        const auto miller = power(s, n, order);
        // Reference products in long double: large c_0^n against a small
        // coefficient cancels badly in double.
        const TruncatedSeries<long double> wide(Coefficients<long double>(c.cast<long double>()));
        auto product = wide;
        for (int k = 1; k < n; ++k) {
            product = multiply(product, wide, order);
        }
        const Coefficients<double> repeated = product.coeffs().cast<double>();
        for (Eigen::Index i = 0; i <= order; ++i) {
            worst = std::max(worst, rel_error(miller[i], repeated(i)));
        }
    }
    return make_check("miller_recurrence_equivalence", worst, tol, worst <= tol, "200 random series, order N <= 12, coefficients 0..N");
}

Check check_a2_closed_form(std::uint64_t seed)
{
    constexpr double tol = 1e-12;
    double worst = 0.0;

    // Worked values: (n, lambda, delta', a0, a1) -> a2.
    struct Worked {
        int n;
        double lambda, delta, a0, a1, expected;
    };
    constexpr Worked worked[] = {
        {2, 2.0, 1.0, 1.0, 0.0, -0.5},
        {2, 0.0, 1.0, 1.0, 1.0, -0.5},
        {3, 24.0, 2.0, 1.0, 0.0, -1.0},
    };
    bool worked_ok = true;
    for (const auto &w : worked) {
        const double value = a2_closed_form(w.n, w.lambda, w.delta, w.a0, w.a1);
        worked_ok = worked_ok && std::abs(value - w.expected) <= 4 * std::numeric_limits<double>::epsilon();
        if (w.lambda != 0.0) {
            const auto series = eigen_coefficients({w.n, w.lambda, w.delta, w.a0, w.a1, 0.0}, 2);
            worked_ok = worked_ok && std::abs(series[2] - w.expected) <= 4 * std::numeric_limits<double>::epsilon();
        }
    }

    std::mt19937_64 rng(stream(seed, a2_stream));
    for (int trial = 0; trial < 100; ++trial) {
        auto p = random_eigen_params(rng);
        p.center = 0.0;
        const double via_recursion = eigen_coefficients(p, 2)[2];
        worst = std::max(worst, rel_error(via_recursion, a2_closed_form(p)));
    }
    return make_check("a2_closed_form", worst, tol, worked_ok && worst <= tol,
                      worked_ok ? "worked values reproduced" : "worked values NOT reproduced");
}

Check check_residual_vanishing(std::uint64_t seed, bool tamper)
{
    constexpr double tol = 1e-9;
    double worst = 0.0;
    for (const auto &p : random_eigen_suite(stream(seed, residual_stream), suite_size)) {
        auto series = eigen_coefficients(p, residual_order);
        if (tamper) {
            Coefficients<double> c = series.coeffs();
            c(5) += perturbation;
            series = Series(c, series.center());
        }
        const auto report = eigen_residual(series, p);
        worst = std::max(worst, report.max_abs / report.scale);
    }
    return make_check("residual_vanishing", worst, tol, worst <= tol,
                      tamper ? "tampered run: one coefficient perturbed by 1e-4" : "N=16, orders 0..14");
}

Check check_center0_recursion(std::uint64_t seed)
{
    constexpr double tol = 1e-12;
    constexpr int order = 12;
    double worst = 0.0;
    for (auto p : random_eigen_suite(stream(seed, center0_stream), suite_size)) {
        p.center = 0.0;
        const auto matched = eigen_coefficients(p, order);
        const auto literal = literal_recursion_coefficients(p, order);
        for (Eigen::Index i = 0; i <= order; ++i) {
            worst = std::max(worst, rel_error(matched[i], literal[i]));
        }
    }
    return make_check("center0_recursion_equivalence", worst, tol, worst <= tol, "N=12");
}

Check check_series_vs_ode(std::uint64_t seed)
{
    constexpr double tol = 1e-8;
    constexpr int order = 40;
    constexpr int samples = 33;
    double worst = 0.0;
    double worst_slope = 0.0;
    int failures = 0;
    for (const auto &p : random_eigen_suite(stream(seed, oracle_stream), 40)) {
        try {
            const auto report = compare_series_oracle(p, order, samples);
            worst = std::max(worst, report.max_value_deviation);
            worst_slope = std::max(worst_slope, report.max_derivative_deviation);
        } catch (const Error &) {
            ++failures;
        }
    }
    std::ostringstream detail;
    detail << "N=" << order << ", " << samples << " samples in half the effective radius; max |du/dz| deviation "
           << worst_slope;
    if (failures > 0) {
        detail << "; " << failures << " oracle failures";
    }
    return make_check("series_vs_ode_oracle", worst, tol, failures == 0 && worst <= tol, detail.str());
}

Check check_polynomial_nonexistence(std::uint64_t seed)
{
    constexpr double tol = 1e-12;
    const auto sweep = guard_sweep(stream(seed, guard_stream), 500);
    const double worst = std::max(sweep.max_leading_rel_error, sweep.max_witness_rel_error);
    const bool pass = sweep.degree_failures == 0 && sweep.zero_witnesses == 0 && worst <= tol;
    std::ostringstream detail;
    detail << sweep.polynomials << " polynomials, " << sweep.degree_failures << " degree-law failures, "
           << sweep.zero_witnesses << " zero witnesses";
    return make_check("polynomial_nonexistence", worst, tol, pass, detail.str());
}

Check check_temporal_identity(std::uint64_t seed)
{
    constexpr double tol = 1e-10;
    std::mt19937_64 rng(stream(seed, temporal_stream));
    std::uniform_int_distribution<int> n_dist(2, 5);
    std::uniform_real_distribution<double> mag(0.2, 2.0);
    std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
    std::uniform_real_distribution<double> c_dist(-2.0, 2.0);
    std::bernoulli_distribution sign(0.5);

    double worst = 0.0;
    int points = 0;
    for (int trial = 0; trial < 100; ++trial) {
        TemporalParams p;
        p.n = n_dist(rng);
        if (trial % 2 == 0) {
            p.A1 = (sign(rng) ? 1.0 : -1.0) * mag(rng);
            p.A2 = (sign(rng) ? 1.0 : -1.0) * mag(rng);
            p.c = c_dist(rng);
        } else {
            p.A1 = std::polar(mag(rng), phase(rng));
            p.A2 = std::polar(mag(rng), phase(rng));
            p.c = complex(c_dist(rng), c_dist(rng));
        }
        for (int k = 0; k <= 30; ++k) {
            const double t = 0.1 * k;
            if (std::abs(bracket(p, t)) < 1e-3 * std::abs(p.A1)) {
                continue; // too close to a pole
            }
            const complex f = f_closed_form(p, t);
            const double scale = std::max(1.0, std::pow(std::abs(f), p.n));
            worst = std::max(worst, std::abs(ode_residual(p, t)) / scale);
            ++points;
        }
    }
    return make_check("temporal_identity", worst, tol, worst <= tol,
                      std::to_string(points) + " (params, t) points, t in [0, 3]");
}

Check check_pde_end_to_end()
{
    constexpr double ceiling = 1e-5;
    // The eta-variable only reaches z >= delta', so the expansion center sits
    // above delta' = 1.
    const EigenParams ep{2, 1.0, 1.0, 1.0, 0.0, 2.0};
    constexpr int order = 24;
    const auto range = trusted_eta_range(ep, order);
    if (!range) {
        return make_check("pde_end_to_end", 0.0, ceiling, false, "empty trusted range");
    }
    const auto [lo, hi] = *range;
    std::vector<double> eta(20), t(20);
    for (int i = 0; i < 20; ++i) {
        eta[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / 19.0;
        t[static_cast<std::size_t>(i)] = 1.0 * i / 19.0;
    }
    const auto tp = with_initial_value(2, complex(ep.lambda), complex(-1.0), complex(0.5));
    const auto solution = separable_solution(tp, ep, eta, t, {order});
    const bool pass = solution.residual_max <= solution.tolerance_budget && solution.tolerance_budget < ceiling;
    std::ostringstream detail;
    detail << "budget " << solution.tolerance_budget << " = truncation " << solution.truncation_bound
           << " + stencil " << solution.stencil_bound << " (ceiling 1e-05)";
    return make_check("pde_end_to_end", solution.residual_max, solution.tolerance_budget, pass, detail.str());
}

Check check_kernel_family()
{
    constexpr double tol = 1e-6;
    constexpr double h = 1e-4;
    double worst = 0.0;
    for (int n : {2, 3, 4}) {
        const OperatorParams op{n, 1.0};
        for (auto [c1, c2] : {std::pair{-1.0, 1.0}, std::pair{-0.5, 2.0}}) {
            auto g = [n, c1 = c1, c2 = c2](double eta) {
                return std::pow(c1 * std::log(std::tanh(0.5 * eta)) + c2, 1.0 / n);
            };
            for (int k = 0; k <= 25; ++k) {
                const double eta = 0.5 + 0.1 * k;
                worst = std::max(worst, std::abs(hyperbolic_residual(g, op, 0.0, eta, h)));
            }
        }
    }
    return make_check("kernel_family", worst, tol, worst <= tol, "eta in [0.5, 3], h = 1e-4");
}

Check check_negative_control(std::uint64_t seed)
{
    constexpr double tol = 1e-9;
    double weakest = std::numeric_limits<double>::infinity();
    int undetected = 0;
    const auto suite = random_eigen_suite(stream(seed, residual_stream), 10);
    for (const auto &p : suite) {
        const auto series = eigen_coefficients(p, residual_order);
        for (Eigen::Index j = 0; j <= series.order(); ++j) {
            Coefficients<double> c = series.coeffs();
            c(j) += perturbation;
            const auto report = eigen_residual(Series(c, series.center()), p);
            const double ratio = report.max_abs / report.scale;
            weakest = std::min(weakest, ratio);
            if (ratio <= tol) {
                ++undetected;
            }
        }
    }
    return make_check("negative_control", weakest, tol, undetected == 0,
                      std::to_string(undetected) + " undetected single-coefficient perturbations of 1e-4");
}

std::vector<Check> run_verification(const VerifyOptions &options)
{
    const auto seed = options.seed;
    return {
        check_miller_recurrence(seed),
        check_a2_closed_form(seed),
        check_residual_vanishing(seed, options.tamper),
        check_center0_recursion(seed),
        check_series_vs_ode(seed),
        check_polynomial_nonexistence(seed),
        check_temporal_identity(seed),
        check_pde_end_to_end(),
        check_kernel_family(),
        check_negative_control(seed),
    };
}

} // namespace hyperseries
