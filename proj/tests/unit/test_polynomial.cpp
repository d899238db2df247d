#include <doctest.h>

#include <random>

#include "hyperseries/polynomial.hpp"

using namespace hyperseries;

TEST_CASE("trailing zeros are trimmed")
{
    const Polynomial<double> p{1.0, 2.0, 0.0, 0.0};
    CHECK(p.degree() == 1);
    CHECK(p.leading() == 2.0);
    CHECK(p[7] == 0.0);
    CHECK(Polynomial<double>{0.0, 0.0}.is_zero());
}

TEST_CASE("exact products and powers")
{
    const Polynomial<double> p{1.0, 1.0, 1.0};
    const auto cube = pow(p, 3);
    const double expected[] = {1, 3, 6, 7, 6, 3, 1};
    REQUIRE(cube.degree() == 6);
    for (int i = 0; i <= 6; ++i) {
        CHECK(cube[i] == expected[i]);
    }
    const auto d = derivative(Polynomial<double>{5.0, 0.0, 3.0});
    CHECK(d.degree() == 1);
    CHECK(d[1] == 6.0);
    CHECK(evaluate(Polynomial<double>{1.0, -2.0, 1.0}, 1.0) == 0.0);
}

TEST_CASE("leading coefficient of a product is the product of leading coefficients")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        Coefficients<double> a(1 + trial % 5), b(1 + trial % 3);
        for (auto &x : a) {
            x = d(rng);
        }
        for (auto &x : b) {
            x = d(rng);
        }
        a(a.size() - 1) = 0.5 + std::abs(a(a.size() - 1));
        b(b.size() - 1) = -0.5 - std::abs(b(b.size() - 1));
        const Polynomial<double> p(a), q(b);
        const auto pq = p * q;
        CHECK(pq.degree() == p.degree() + q.degree());
        CHECK(pq.leading() == doctest::Approx(p.leading() * q.leading()).epsilon(1e-15));
    }
}
