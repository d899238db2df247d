#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <vector>

#include "hyperseries/eigen_recursion.hpp"
#include "hyperseries/verification.hpp"

using namespace hyperseries;
using boost::multiprecision::cpp_rational;

namespace {

template <typename F>
Errc code_of(F &&f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::invalid_argument;
}

// Exact polynomial arithmetic over the rationals, independent of the library.
using RPoly = std::vector<cpp_rational>;

RPoly mul(const RPoly &a, const RPoly &b)
{
    RPoly c(a.size() + b.size() - 1, cpp_rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

RPoly diff(const RPoly &a)
{
    RPoly d(std::max<std::size_t>(a.size(), 2) - 1, cpp_rational(0));
    for (std::size_t i = 1; i < a.size(); ++i) {
        d[i - 1] = a[i] * static_cast<int>(i);
    }
    return d;
}

// Coefficient i of d/dw[q(w) d(u^n)/dw] - lambda u, exactly, with
// q(w) = z^2 - delta'^2 written in w = z - center.
cpp_rational residual_coeff(const RPoly &u, int n, const cpp_rational &lambda, const RPoly &q, std::size_t i)
{
    RPoly un{cpp_rational(1)};
    for (int k = 0; k < n; ++k) {
        un = mul(un, u);
    }
    const RPoly l = diff(mul(q, diff(un)));
    const cpp_rational li = i < l.size() ? l[i] : cpp_rational(0);
    return li - lambda * (i < u.size() ? u[i] : cpp_rational(0));
}

// One unknown per step; the residual is affine in it, so two exact
// evaluations give intercept and slope.
RPoly rational_oracle(int n, cpp_rational lambda, cpp_rational delta, cpp_rational a0, cpp_rational a1, int order,
                      cpp_rational center = 0)
{
    RPoly a{a0, a1};
    const RPoly q{center * center - delta * delta, 2 * center, 1};
    for (int i = 0; i + 2 <= order; ++i) {
        RPoly trial = a;
        trial.push_back(0);
        const cpp_rational at0 = residual_coeff(trial, n, lambda, q, static_cast<std::size_t>(i));
        trial.back() = 1;
        const cpp_rational at1 = residual_coeff(trial, n, lambda, q, static_cast<std::size_t>(i));
        a.push_back(-at0 / (at1 - at0));
    }
    return a;
}

} // namespace

TEST_CASE("parameter validation")
{
    CHECK(code_of([] { validate(EigenParams{2, 0.0, 1.0, 1.0, 0.0, 0.0}); }) == Errc::invalid_argument);
    CHECK(code_of([] { validate(EigenParams{2, 1.0, 1.0, 1e-9, 0.0, 0.0}); }) == Errc::near_zero_constant);
    CHECK(code_of([] { validate(EigenParams{2, 1.0, 1.0, 1.0, 0.0, 1.0 + 1e-8}); }) == Errc::invalid_argument);
    CHECK(code_of([] { validate(EigenParams{1, 1.0, 1.0, 1.0, 0.0, 0.0}); }) == Errc::invalid_argument);
    CHECK(code_of([] { (void)eigen_coefficients(EigenParams{}, 1); }) == Errc::insufficient_order);
}

TEST_CASE("a2 closed form")
{
    CHECK(a2_closed_form(EigenParams{2, 2.0, 1.0, 1.0, 0.0, 0.0}) == -0.5);
    CHECK(a2_closed_form(2, 0.0, 1.0, 1.0, 1.0) == -0.5);
    CHECK(a2_closed_form(EigenParams{3, 24.0, 2.0, 1.0, 0.0, 0.0}) == -1.0);
    CHECK(code_of([] { (void)a2_closed_form(EigenParams{2, 1.0, 1.0, 1.0, 0.0, 3.0}); }) == Errc::wrong_center);

    for (auto p : random_eigen_suite(404, 100)) {
        p.center = 0.0;
        CHECK(eigen_coefficients(p, 2)[2] == doctest::Approx(a2_closed_form(p)).epsilon(1e-12));
    }
}

TEST_CASE("a2 scales linearly in lambda when a1 = 0")
{
    for (auto p : random_eigen_suite(405, 50)) {
        p.center = 0.0;
        p.a1 = 0.0;
        const double base = eigen_coefficients(p, 2)[2];
        REQUIRE(base != 0.0);
        p.lambda *= -2.5;
        CHECK(eigen_coefficients(p, 2)[2] == doctest::Approx(-2.5 * base).epsilon(1e-12));
    }
}

TEST_CASE("coefficients at order 2")
{
    const auto s = eigen_coefficients(EigenParams{2, 2.0, 1.0, 1.0, 0.0, 0.0}, 2);
    REQUIRE(s.order() == 2);
    CHECK(s[0] == 1.0);
    CHECK(s[1] == 0.0);
    CHECK(s[2] == -0.5);
}

TEST_CASE("coefficients match an exact rational oracle")
{
    // Frozen from an independent symbolic computation of the same matching problem.
    const double frozen[] = {1.0,
                             1.0,
                             -1.0,
                             7.0 / 6.0,
                             -11.0 / 6.0,
                             73.0 / 24.0,
                             -1009.0 / 180.0,
                             18049.0 / 1680.0,
                             -216877.0 / 10080.0};
    const auto oracle = rational_oracle(2, 2, 1, 1, 1, 8);
    const auto s = eigen_coefficients(EigenParams{2, 2.0, 1.0, 1.0, 1.0, 0.0}, 8);
    REQUIRE(s.order() == 8);
    for (int i = 0; i <= 8; ++i) {
        CHECK(static_cast<double>(oracle[static_cast<std::size_t>(i)]) == doctest::Approx(frozen[i]).epsilon(1e-16));
        CHECK(s[i] == doctest::Approx(frozen[i]).epsilon(1e-13));
    }

    // A cubic case about z = 2, where z^2 - 1 = 3 + 4w + w^2.
    const EigenParams shifted{3, -1.5, 1.0, 0.8, 0.25, 2.0};
    const auto exact = rational_oracle(3, cpp_rational(-3, 2), 1, cpp_rational(4, 5), cpp_rational(1, 4), 6, 2);
    const auto t = eigen_coefficients(shifted, 6);
    for (int i = 0; i <= 6; ++i) {
        CHECK(t[i] == doctest::Approx(static_cast<double>(exact[static_cast<std::size_t>(i)])).epsilon(1e-13));
    }
    CHECK(eigen_residual(t, shifted).within(1e-12));
}

TEST_CASE("a coefficient far below its neighbours keeps its relative accuracy")
{
    // a_11 is about 1e-4 of a_10 and a_12 here.
    const EigenParams p{2, 4.8238863276814996, 1.468897853332342, -0.77878891229833913, -0.72856441308887843, 0.0};
    const auto exact = rational_oracle(p.n, cpp_rational(p.lambda), cpp_rational(p.delta_prime), cpp_rational(p.a0),
                                       cpp_rational(p.a1), 12);
    const auto matched = eigen_coefficients(p, 12);
    const auto literal = literal_recursion_coefficients(p, 12);
    REQUIRE(std::abs(static_cast<double>(exact[11])) < 1e-6);
    for (int i = 0; i <= 12; ++i) {
        const double e = static_cast<double>(exact[static_cast<std::size_t>(i)]);
        CHECK(matched[i] == doctest::Approx(e).epsilon(1e-13));
        CHECK(literal[i] == doctest::Approx(e).epsilon(1e-13));
    }
}

TEST_CASE("residual contract on the random suite")
{
    for (const auto &p : random_eigen_suite(406, 100)) {
        const auto s = eigen_coefficients(p, 16);
        const auto r = eigen_residual(s, p);
        CHECK(r.within(1e-10));
    }
}

TEST_CASE("center-0 literal recursion")
{
    for (auto p : random_eigen_suite(407, 100)) {
        p.center = 0.0;
        const auto matched = eigen_coefficients(p, 12);
        const auto literal = literal_recursion_coefficients(p, 12);
        for (int i = 0; i <= 12; ++i) {
            CHECK(matched[i] == doctest::Approx(literal[i]).epsilon(1e-12));
        }
        CHECK(literal_formula_agrees(p, 12));
    }
}

TEST_CASE("literal recursion at a shifted center describes a different function")
{
    // The literal formula keeps q(z) = z^2 - delta'^2 in its center-0 form, so
    // transplanted to a center a != 0 it solves a different equation.
    const EigenParams p{2, 1.0, 1.0, 1.0, 0.2, 2.0};
    CHECK_FALSE(literal_formula_agrees(p, 8));
    const auto literal = literal_recursion_coefficients(p, 8);
    CHECK_FALSE(eigen_residual(Series(literal.coeffs(), p.center), p).within(1e-6));
}

TEST_CASE("radius estimate")
{
    Coefficients<double> geometric(17), third(17);
    for (int i = 0; i <= 16; ++i) {
        geometric(i) = std::pow(2.0, -i);
        third(i) = std::pow(3.0, -i);
    }
    CHECK(radius_estimate(Series(geometric)) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(radius_estimate(Series(third)) == doctest::Approx(3.0).epsilon(1e-12));

    // Even function: every other coefficient is zero, so ratios fall back to Cauchy-Hadamard.
    Coefficients<double> even = Coefficients<double>::Zero(17);
    for (int i = 0; i <= 16; i += 2) {
        even(i) = std::pow(0.25, i / 2);
    }
    CHECK(radius_estimate(Series(even)) == doctest::Approx(2.0).epsilon(0.1));

    CHECK(code_of([] { (void)radius_estimate(Series{1, 2, 3}); }) == Errc::insufficient_order);
    Coefficients<double> sparse = Coefficients<double>::Zero(12);
    sparse(0) = 1.0;
    CHECK(code_of([&] { (void)radius_estimate(Series(sparse)); }) == Errc::no_estimate);

    const EigenParams p{2, 1.0, 1.0, 1.0, 0.0, 0.0};
    const auto s = eigen_coefficients(p, 32);
    const double r = radius_estimate(s);
    CHECK(std::isfinite(r));
    CHECK(r > 0.0);
    CHECK(effective_radius(s, p) <= p.delta_prime);

    // Oscillating tail: the ratio median overshoots, the root test bounds it.
    const EigenParams q{3, -4.368693539175208, 1.6014577371676073, 0.70166858439732804, 0.27579450962287666, 0.0};
    const auto t = eigen_coefficients(q, 40);
    double limsup = 0.0;
    for (int i = 33; i <= 40; ++i) {
        limsup = std::max(limsup, std::pow(std::abs(t[i]), 1.0 / i));
    }
    CHECK(radius_estimate(t) > 1.3);
    CHECK(effective_radius(t, q) == doctest::Approx(1.0 / limsup).epsilon(1e-15));
    CHECK(effective_radius(t, q) < 1.0);
}

TEST_CASE("coefficients are a deterministic function of the parameters")
{
    for (const auto &p : random_eigen_suite(408, 30)) {
        CHECK(determinism_check(p, 16));
    }
    const EigenParams base{3, 1.5, 1.0, 1.0, 0.3, 0.0};
    auto other_a1 = base;
    other_a1.a1 = 0.4;
    auto other_lambda = base;
    other_lambda.lambda = 1.6;
    const auto s = eigen_coefficients(base, 6);
    const auto t = eigen_coefficients(other_a1, 6);
    const auto u = eigen_coefficients(other_lambda, 6);
    CHECK(s[0] == t[0]);
    for (int i = 2; i <= 6; ++i) {
        CHECK(s[i] != t[i]);
    }
    CHECK(s[1] == u[1]);
    CHECK(s[2] != u[2]);
}
