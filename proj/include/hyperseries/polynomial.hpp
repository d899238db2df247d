#pragma once

// Exact-structure polynomials: every product is a full-length convolution
// and trailing zero coefficients are stripped, so degree() is the true
// degree. Used where degree bookkeeping matters more than truncation.

#include <algorithm>
#include <initializer_list>
#include <string>

#include <Eigen/Core>

#include "hyperseries/error.hpp"
#include "hyperseries/series.hpp"

namespace hyperseries {

template <typename Scalar = double>
class Polynomial {
public:
    using vector_type = Coefficients<Scalar>;

    explicit Polynomial(vector_type coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(static_cast<Eigen::Index>(coeffs.size()))
    {
        std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
        normalize();
    }

    /// Degree of the highest nonzero coefficient; the zero polynomial has degree 0.
    Eigen::Index degree() const noexcept { return coeffs_.size() - 1; }
    Scalar leading() const noexcept { return coeffs_(degree()); }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_(0) == Scalar(0); }
    const vector_type &coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^i, zero beyond the degree.
    Scalar operator[](Eigen::Index i) const { return i <= degree() ? coeffs_(i) : Scalar(0); }

    Series as_series(double center = 0.0) const
        requires std::is_same_v<Scalar, double>
    {
        return Series(coeffs_, center);
    }

private:
    void normalize()
    {
        if (coeffs_.size() == 0) {
            raise(Errc::invalid_argument, "a polynomial needs at least one coefficient");
        }
        for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
            if (!detail::is_finite(coeffs_(i))) {
                raise(Errc::non_finite_input, "coefficient " + std::to_string(i) + " is not finite");
            }
        }
        Eigen::Index len = coeffs_.size();
        while (len > 1 && coeffs_(len - 1) == Scalar(0)) {
            --len;
        }
        coeffs_.conservativeResize(len);
    }

    vector_type coeffs_;
};

template <typename Scalar>
Polynomial<Scalar> operator+(const Polynomial<Scalar> &p, const Polynomial<Scalar> &q)
{
    const auto len = std::max(p.coeffs().size(), q.coeffs().size());
    Coefficients<Scalar> out(len);
    for (Eigen::Index i = 0; i < len; ++i) {
        out(i) = p[i] + q[i];
    }
    return Polynomial<Scalar>(std::move(out));
}

template <typename Scalar>
Polynomial<Scalar> operator*(const Scalar &alpha, const Polynomial<Scalar> &p)
{
    return Polynomial<Scalar>(Coefficients<Scalar>(alpha * p.coeffs()));
}

template <typename Scalar>
Polynomial<Scalar> operator-(const Polynomial<Scalar> &p, const Polynomial<Scalar> &q)
{
    return p + Scalar(-1) * q;
}

template <typename Scalar>
Polynomial<Scalar> operator*(const Polynomial<Scalar> &p, const Polynomial<Scalar> &q)
{
    const auto dp = p.degree();
    const auto dq = q.degree();
    Coefficients<Scalar> c = Coefficients<Scalar>::Zero(dp + dq + 1);
    for (Eigen::Index i = 0; i <= dp; ++i) {
        for (Eigen::Index j = 0; j <= dq; ++j) {
            c(i + j) += p.coeffs()(i) * q.coeffs()(j);
        }
    }
    return Polynomial<Scalar>(std::move(c));
}

/// p^n by repeated full convolution.
template <typename Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar> &p, int n)
{
    if (n < 0) {
        raise(Errc::invalid_argument, "exponent must be non-negative");
    }
    Polynomial<Scalar> out{Scalar(1)};
    for (int k = 0; k < n; ++k) {
        out = out * p;
    }
    return out;
}

template <typename Scalar>
Polynomial<Scalar> derivative(const Polynomial<Scalar> &p)
{
    if (p.degree() == 0) {
        return Polynomial<Scalar>{Scalar(0)};
    }
    Coefficients<Scalar> d(p.degree());
    for (Eigen::Index i = 1; i <= p.degree(); ++i) {
        d(i - 1) = static_cast<double>(i) * p.coeffs()(i);
    }
    return Polynomial<Scalar>(std::move(d));
}

template <typename Scalar, typename Arg>
auto evaluate(const Polynomial<Scalar> &p, const Arg &w)
{
    using Result = decltype(Scalar{} * Arg{});
    Result acc(p.leading());
    for (Eigen::Index i = p.degree() - 1; i >= 0; --i) {
        acc = acc * w + Result(p.coeffs()(i));
    }
    return acc;
}

} // namespace hyperseries
