#include "hyperseries/eigen_recursion.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace hyperseries {

namespace {

template <typename T>
T int_pow(T x, int k)
{
    T acc(1);
    for (int i = 0; i < k; ++i) {
        acc *= x;
    }
    return acc;
}

void check_order(int order)
{
    if (order < 2) {
        raise(Errc::insufficient_order, "order must be >= 2, got " + std::to_string(order));
    }
}

// Cauchy-Hadamard over the last `window` terms; empty with fewer than two nonzero terms.
std::optional<double> root_test_radius(const Series &s, Eigen::Index window)
{
    double limsup = 0.0;
    int nonzero = 0;
    for (Eigen::Index i = s.order() - window + 1; i <= s.order(); ++i) {
        if (s[i] != 0.0) {
            ++nonzero;
            limsup = std::max(limsup, std::pow(std::abs(s[i]), 1.0 / static_cast<double>(i)));
        }
    }
    if (nonzero < 2) {
        return std::nullopt;
    }
    return 1.0 / limsup;
}

} // namespace

void validate(const EigenParams &p)
{
    validate(p.op());
    if (!std::isfinite(p.lambda) || p.lambda == 0.0) {
        raise(Errc::invalid_argument, "lambda must be finite and nonzero");
    }
    if (!std::isfinite(p.a0) || std::abs(p.a0) < near_zero_constant) {
        raise(Errc::near_zero_constant, "|a0| must be >= 1e-8");
    }
    if (!std::isfinite(p.a1) || !std::isfinite(p.center)) {
        raise(Errc::non_finite_input, "a1 and center must be finite");
    }
    if (p.center != 0.0 && std::abs(p.center * p.center - p.delta_prime * p.delta_prime) < near_singular_center) {
        raise(Errc::invalid_argument, "|center^2 - delta'^2| must be >= 1e-6");
    }
}

double a2_closed_form(int n, double lambda, double delta_prime, double a0, double a1)
{
    // The two terms can cancel; evaluate wide like the recursion.
    using Wide = long double;
    const Wide d = delta_prime;
    const Wide b = a1;
    const Wide first = -static_cast<Wide>(lambda) / (2.0L * d * d * n * int_pow<Wide>(a0, n - 2));
    return static_cast<double>(first - (n - 1) * b * b / (2.0L * a0));
}

double a2_closed_form(const EigenParams &p)
{
    validate(p);
    if (p.center != 0.0) {
        raise(Errc::wrong_center, "the a2 closed form holds at center 0 only");
    }
    return a2_closed_form(p.n, p.lambda, p.delta_prime, p.a0, p.a1);
}

Series eigen_coefficients(const EigenParams &p, int order)
{
    validate(p);
    check_order(order);
    const auto op = p.op();
    // Extended precision inside the recursion: isolated small coefficients
    // come out of heavy cancellation.
    using Wide = long double;
    const Wide q0 = static_cast<Wide>(p.center) * p.center - static_cast<Wide>(p.delta_prime) * p.delta_prime;
    const Wide lead = p.n * int_pow<Wide>(p.a0, p.n - 1);

    Coefficients<Wide> a = Coefficients<Wide>::Zero(order + 1);
    a(0) = p.a0;
    a(1) = p.a1;
    for (int i = 0; i + 2 <= order; ++i) {
        // a_{i+2} is still zero here, so this is the intercept of the affine map.
        Wide intercept = 0.0L;
        try {
            const TruncatedSeries<Wide> partial(Coefficients<Wide>(a.head(i + 3)), p.center);
            intercept = apply_algebraic_operator(partial, op)[i] - static_cast<Wide>(p.lambda) * a(i);
        } catch (const Error &e) {
            // Valid inputs only produce non-finite intermediates by overflow.
            if (e.code() != Errc::non_finite_input) {
                throw;
            }
            raise(Errc::degenerate_solve, "overflow while solving for a_" + std::to_string(i + 2));
        }
        const Wide slope = q0 * (i + 1.0L) * (i + 2.0L) * lead;
        // Degenerate relative to the slope's own size, not to the coefficients,
        // which grow geometrically with i when the radius is below one.
        const double natural = (i + 1.0) * (i + 2.0) * p.n * std::pow(std::max(1.0, std::abs(p.a0)), p.n - 1)
                               * std::max({1.0, p.center * p.center, p.delta_prime * p.delta_prime});
        a(i + 2) = -intercept / slope;
        if (std::abs(static_cast<double>(slope)) < 1e-12 * natural || !std::isfinite(static_cast<double>(a(i + 2)))) {
            raise(Errc::degenerate_solve, "no finite solution for a_" + std::to_string(i + 2));
        }
    }
    return Series(Coefficients<double>(a.cast<double>()), p.center);
}

Series literal_recursion_coefficients(const EigenParams &p, int order)
{
    validate(p);
    check_order(order);
    using Wide = long double;
    const int n = p.n;
    const Wide d2 = static_cast<Wide>(p.delta_prime) * p.delta_prime;
    const Wide a0n1 = int_pow<Wide>(p.a0, n - 1);
    const Wide a0n = a0n1 * p.a0;

    std::vector<Wide> a(order + 1, 0.0L);
    std::vector<Wide> b(order + 1, 0.0L);
    a[0] = p.a0;
    a[1] = p.a1;
    auto miller = [&](int j) {
        Wide acc = 0.0L;
        for (int k = 1; k <= j; ++k) {
            acc += (k * (n + 1.0L) - j) * a[k] * b[j - k];
        }
        b[j] = acc / (j * a[0]);
    };
    b[0] = a0n;
    miller(1);

    for (int i = 0; i + 2 <= order; ++i) {
        Wide s1 = 0.0L;
        for (int k = 1; k <= i; ++k) {
            s1 += (k * (n + 1.0L) - i) * a[k] * b[i - k];
        }
        Wide s2 = 0.0L;
        for (int k = 1; k <= i + 1; ++k) {
            s2 += (k * (n + 1.0L) - i - 2) * a[k] * b[i + 2 - k];
        }
        a[i + 2] = -p.lambda * a[i] / (d2 * (i + 1.0L) * (i + 2.0L) * n * a0n1)
                   + (s1 - d2 * s2) / (d2 * (i + 2.0L) * n * a0n);
        miller(i + 2);
    }
    Coefficients<double> out(order + 1);
    for (int i = 0; i <= order; ++i) {
        out(i) = static_cast<double>(a[i]);
    }
    return Series(std::move(out), p.center);
}

bool literal_formula_agrees(const EigenParams &p, int order, double rel_tol)
{
    const auto matched = eigen_coefficients(p, order);
    const auto literal = literal_recursion_coefficients(p, order);
    for (Eigen::Index i = 0; i <= matched.order(); ++i) {
        const double ref = std::max(1.0, std::abs(matched[i]));
        if (std::abs(matched[i] - literal[i]) > rel_tol * ref) {
            return false;
        }
    }
    return true;
}

ResidualReport eigen_residual(const Series &u, const EigenParams &p)
{
    validate(p);
    if (u.center() != p.center) {
        raise(Errc::center_mismatch, "series center differs from the parameter center");
    }
    const auto lu = apply_algebraic_operator(u, p.op());
    const auto un = power(u, p.n, u.order());
    ResidualReport report;
    report.scale = std::max({1.0, u.coeffs().cwiseAbs().maxCoeff(), un.coeffs().cwiseAbs().maxCoeff()});
    for (Eigen::Index i = 0; i <= lu.order(); ++i) {
        const double r = std::abs(lu[i] - p.lambda * u[i]);
        if (r > report.max_abs) {
            report.max_abs = r;
            report.worst_index = i;
        }
    }
    return report;
}

double radius_estimate(const Series &s)
{
    constexpr Eigen::Index window = 8;
    const auto N = s.order();
    if (N < window) {
        raise(Errc::insufficient_order, "radius estimate needs order >= 8");
    }
    std::vector<double> ratios;
    for (Eigen::Index i = N - window + 1; i <= N; ++i) {
        if (s[i] != 0.0 && s[i - 1] != 0.0) {
            ratios.push_back(std::abs(s[i - 1] / s[i]));
        }
    }
    if (2 * static_cast<Eigen::Index>(ratios.size()) >= window) {
        std::sort(ratios.begin(), ratios.end());
        const auto m = ratios.size();
        return m % 2 == 1 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
    }

    const auto root = root_test_radius(s, window);
    if (!root) {
        raise(Errc::no_estimate, "fewer than two nonzero coefficients in the tail window");
    }
    return *root;
}

double effective_radius(const Series &s, const EigenParams &p)
{
    const double to_singular = std::min(std::abs(p.center - p.delta_prime), std::abs(p.center + p.delta_prime));
    // The ratio median overshoots when the tail oscillates; the root test does not.
    const double root = root_test_radius(s, 8).value_or(to_singular);
    return std::min({radius_estimate(s), root, to_singular});
}

bool determinism_check(const EigenParams &p, int order)
{
    const auto first = eigen_coefficients(p, order);
    auto other = std::async(std::launch::async, [&p, order] { return eigen_coefficients(p, order); });
    const auto second = other.get();
    return first == second;
}

} // namespace hyperseries
