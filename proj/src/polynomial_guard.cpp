#include "hyperseries/polynomial_guard.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace hyperseries {

namespace {

double predicted_leading(const Poly &p, int n)
{
    const double nm = static_cast<double>(n) * static_cast<double>(p.degree());
    return nm * (nm + 1.0) * std::pow(p.leading(), n);
}

} // namespace

void validate_guard_polynomial(const Poly &p)
{
    if (p.degree() < 1) {
        raise(Errc::invalid_argument, "guard polynomials need degree >= 1");
    }
}

double leading_coeff(const Poly &p)
{
    validate_guard_polynomial(p);
    return p.leading();
}

DegreeLaw operator_degree_law(const Poly &p, const OperatorParams &params)
{
    validate_guard_polynomial(p);
    const auto lp = apply_algebraic_operator(p, params);
    return {lp.degree(), params.n * p.degree()};
}

LeadingCoeffLaw leading_coeff_law(const Poly &p, const OperatorParams &params)
{
    validate_guard_polynomial(p);
    const auto lp = apply_algebraic_operator(p, params);
    return {lp.leading(), predicted_leading(p, params.n)};
}

double nonexistence_witness(const Poly &p, const OperatorParams &params, double lambda)
{
    validate_guard_polynomial(p);
    const auto residual = apply_algebraic_operator(p, params) - lambda * p;
    return residual[params.n * p.degree()];
}

GuardSweepResult guard_sweep(std::uint64_t seed, int count, int max_degree)
{
    if (count < 0 || max_degree < 1) {
        raise(Errc::invalid_argument, "sweep needs count >= 0 and max_degree >= 1");
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> degree_dist(1, max_degree);
    std::uniform_int_distribution<int> n_dist(2, 3);
    std::uniform_int_distribution<int> delta_dist(0, 2);
    std::uniform_real_distribution<double> coeff_dist(-2.0, 2.0);
    std::uniform_real_distribution<double> lead_dist(0.1, 2.0);
    std::uniform_real_distribution<double> lambda_dist(0.1, 5.0);
    std::bernoulli_distribution sign_dist(0.5);
    constexpr std::array deltas{0.5, 1.0, 3.0};

    GuardSweepResult result;
    result.min_witness_ratio = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < count; ++trial) {
        const int m = degree_dist(rng);
        Coefficients<double> c(m + 1);
        for (int i = 0; i < m; ++i) {
            c(i) = coeff_dist(rng);
        }
        c(m) = (sign_dist(rng) ? 1.0 : -1.0) * lead_dist(rng);
        const Poly p(c);
        const OperatorParams params{n_dist(rng), deltas[static_cast<std::size_t>(delta_dist(rng))]};
        const double lambda = (sign_dist(rng) ? 1.0 : -1.0) * lambda_dist(rng);

        ++result.polynomials;
        const auto degrees = operator_degree_law(p, params);
        if (degrees.computed != degrees.predicted) {
            ++result.degree_failures;
        }
        const auto lead = leading_coeff_law(p, params);
        result.max_leading_rel_error =
            std::max(result.max_leading_rel_error, std::abs(lead.lhs - lead.rhs) / std::abs(lead.rhs));
        const double witness = nonexistence_witness(p, params, lambda);
        if (witness == 0.0) {
            ++result.zero_witnesses;
        }
        const double predicted = predicted_leading(p, params.n);
        result.max_witness_rel_error =
            std::max(result.max_witness_rel_error, std::abs(witness - predicted) / std::abs(predicted));
        result.min_witness_ratio = std::min(result.min_witness_ratio, std::abs(witness) / std::abs(predicted));
    }
    if (count == 0) {
        result.min_witness_ratio = 1.0;
    }
    return result;
}

} // namespace hyperseries
