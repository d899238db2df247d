#pragma once

// Truncated power series about an arbitrary real center.
//
// A TruncatedSeries<Scalar> holds c_0 ... c_N of sum_i c_i (z - a)^i. The
// scalar is double by default; std::complex<double> is supported by every
// operation in this header.
//
// Truncation bookkeeping: add() keeps the shorter reliable length, while
// multiply() and power() treat their inputs as exact polynomials and take an
// explicit cap on the output order. Callers that propagate truncated data
// pass the cap themselves.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "hyperseries/error.hpp"

namespace hyperseries {

/// Guard on |c_0| for any operation that divides by the constant term.
inline constexpr double near_zero_constant = 1e-8;

template <typename Scalar>
using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename Scalar>
bool is_finite(const Scalar &x)
{
    if constexpr (is_complex<Scalar>::value) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    } else {
        return std::isfinite(x);
    }
}

// Accumulator type for recurrences that divide by c_0: one step wider than Scalar.
template <typename T>
struct wider { using type = T; };
template <>
struct wider<double> { using type = long double; };
template <>
struct wider<std::complex<double>> { using type = std::complex<long double>; };

inline std::string describe_center(double a, double b)
{
    return "centers " + std::to_string(a) + " and " + std::to_string(b) + " differ";
}

} // namespace detail

template <typename Scalar = double>
class TruncatedSeries {
public:
    using scalar_type = Scalar;
    using vector_type = Coefficients<Scalar>;

    explicit TruncatedSeries(vector_type coeffs, double center = 0.0)
        : coeffs_(std::move(coeffs)), center_(center)
    {
        validate();
    }

    TruncatedSeries(std::initializer_list<Scalar> coeffs, double center = 0.0)
        : coeffs_(static_cast<Eigen::Index>(coeffs.size())), center_(center)
    {
        std::copy(coeffs.begin(), coeffs.end(), coeffs_.data());
        validate();
    }

    double center() const noexcept { return center_; }
    Eigen::Index order() const noexcept { return coeffs_.size() - 1; }
    const vector_type &coeffs() const noexcept { return coeffs_; }
    Scalar operator[](Eigen::Index i) const { return coeffs_(i); }

    /// Copy restricted to orders 0..order.
    TruncatedSeries truncated(Eigen::Index order) const
    {
        if (order < 0) {
            raise(Errc::invalid_argument, "truncation order must be non-negative");
        }
        const auto keep = std::min(order, this->order()) + 1;
        return TruncatedSeries(vector_type(coeffs_.head(keep)), center_);
    }

    friend bool operator==(const TruncatedSeries &a, const TruncatedSeries &b)
    {
        return a.center_ == b.center_ && a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
    }

private:
    void validate() const
    {
        if (coeffs_.size() == 0) {
            raise(Errc::invalid_argument, "a series needs at least one coefficient");
        }
        if (!std::isfinite(center_)) {
            raise(Errc::non_finite_input, "series center must be finite");
        }
        for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
            if (!detail::is_finite(coeffs_(i))) {
                raise(Errc::non_finite_input, "coefficient " + std::to_string(i) + " is not finite");
            }
        }
    }

    vector_type coeffs_;
    double center_;
};

using Series = TruncatedSeries<double>;
using ComplexSeries = TruncatedSeries<std::complex<double>>;

template <typename Scalar>
TruncatedSeries<Scalar> add(const TruncatedSeries<Scalar> &s, const TruncatedSeries<Scalar> &t)
{
    if (s.center() != t.center()) {
        raise(Errc::center_mismatch, detail::describe_center(s.center(), t.center()));
    }
    const auto len = std::min(s.coeffs().size(), t.coeffs().size());
    Coefficients<Scalar> out = s.coeffs().head(len) + t.coeffs().head(len);
    return TruncatedSeries<Scalar>(std::move(out), s.center());
}

template <typename Scalar>
TruncatedSeries<Scalar> operator-(const TruncatedSeries<Scalar> &s)
{
    return TruncatedSeries<Scalar>(Coefficients<Scalar>(-s.coeffs()), s.center());
}

template <typename Scalar>
TruncatedSeries<Scalar> operator+(const TruncatedSeries<Scalar> &s, const TruncatedSeries<Scalar> &t)
{
    return add(s, t);
}

template <typename Scalar>
TruncatedSeries<Scalar> operator-(const TruncatedSeries<Scalar> &s, const TruncatedSeries<Scalar> &t)
{
    return add(s, -t);
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(const Scalar &alpha, const TruncatedSeries<Scalar> &s)
{
    return TruncatedSeries<Scalar>(Coefficients<Scalar>(alpha * s.coeffs()), s.center());
}

/// Cauchy product c_i = sum_{k=0}^{i} s_k t_{i-k}, output order
/// min(s.order + t.order, cap). Accumulates in ascending k.
template <typename Scalar>
TruncatedSeries<Scalar> multiply(const TruncatedSeries<Scalar> &s, const TruncatedSeries<Scalar> &t,
                                 std::optional<Eigen::Index> cap = std::nullopt)
{
    if (s.center() != t.center()) {
        raise(Errc::center_mismatch, detail::describe_center(s.center(), t.center()));
    }
    auto order = s.order() + t.order();
    if (cap) {
        if (*cap < 0) {
            raise(Errc::invalid_argument, "order cap must be non-negative");
        }
        order = std::min(order, *cap);
    }
    const auto &a = s.coeffs();
    const auto &b = t.coeffs();
    Coefficients<Scalar> c = Coefficients<Scalar>::Zero(order + 1);
    for (Eigen::Index i = 0; i <= order; ++i) {
        const auto k_lo = std::max<Eigen::Index>(0, i - t.order());
        const auto k_hi = std::min(i, s.order());
        Scalar acc(0);
        for (Eigen::Index k = k_lo; k <= k_hi; ++k) {
            acc += a(k) * b(i - k);
        }
        c(i) = acc;
    }
    return TruncatedSeries<Scalar>(std::move(c), s.center());
}

template <typename Scalar>
TruncatedSeries<Scalar> operator*(const TruncatedSeries<Scalar> &s, const TruncatedSeries<Scalar> &t)
{
    return multiply(s, t);
}

/// s^n through order cap (default n * s.order) by the J.C.P. Miller
/// recurrence
///   b_0 = c_0^n,   b_i = 1/(i c_0) sum_{k=1}^{i} (k(n+1) - i) c_k b_{i-k}.
/// Coefficients of s beyond s.order are taken as zero. n = 0 yields [1].
template <typename Scalar>
TruncatedSeries<Scalar> power(const TruncatedSeries<Scalar> &s, int n,
                              std::optional<Eigen::Index> cap = std::nullopt)
{
    if (n < 0) {
        raise(Errc::invalid_argument, "exponent must be non-negative");
    }
    if (n == 0) {
        return TruncatedSeries<Scalar>({Scalar(1)}, s.center());
    }
    if (n == 1 && !cap) {
        return s;
    }
    const Scalar c0 = s[0];
    if (std::abs(c0) < near_zero_constant) {
        raise(Errc::near_zero_constant, "|c_0| is below " + std::to_string(near_zero_constant));
    }
    Eigen::Index order = static_cast<Eigen::Index>(n) * s.order();
    if (cap) {
        if (*cap < 0) {
            raise(Errc::invalid_argument, "order cap must be non-negative");
        }
        order = *cap;
    }
    // Small |c_0| amplifies rounding at every step, so the recurrence runs wide.
    using Wide = typename detail::wider<Scalar>::type;
    using Real = decltype(std::abs(Wide{}));
    const Coefficients<Wide> a = s.coeffs().template cast<Wide>();
    const Wide wc0 = a(0);
    Coefficients<Wide> b = Coefficients<Wide>::Zero(order + 1);
    b(0) = Wide(1);
    for (int k = 0; k < n; ++k) {
        b(0) *= wc0;
    }
    for (Eigen::Index i = 1; i <= order; ++i) {
        const auto k_hi = std::min(i, s.order());
        Wide acc(0);
        for (Eigen::Index k = 1; k <= k_hi; ++k) {
            acc += static_cast<Real>(k * (n + 1) - i) * a(k) * b(i - k);
        }
        b(i) = acc / (static_cast<Real>(i) * wc0);
    }
    return TruncatedSeries<Scalar>(Coefficients<Scalar>(b.template cast<Scalar>()), s.center());
}

/// Termwise derivative [1 c_1, 2 c_2, ..., N c_N]; a constant maps to [0].
template <typename Scalar>
TruncatedSeries<Scalar> derivative(const TruncatedSeries<Scalar> &s)
{
    if (s.order() == 0) {
        return TruncatedSeries<Scalar>({Scalar(0)}, s.center());
    }
    Coefficients<Scalar> d(s.order());
    for (Eigen::Index i = 1; i <= s.order(); ++i) {
        d(i - 1) = static_cast<double>(i) * s[i];
    }
    return TruncatedSeries<Scalar>(std::move(d), s.center());
}

/// Horner evaluation of sum_i c_i (z - center)^i.
template <typename Scalar, typename Arg>
auto evaluate(const TruncatedSeries<Scalar> &s, const Arg &z)
{
    using Result = decltype(Scalar{} * Arg{});
    const Arg w = z - Arg(s.center());
    Result acc(s[s.order()]);
    for (Eigen::Index i = s.order() - 1; i >= 0; --i) {
        acc = acc * w + Result(s[i]);
    }
    return acc;
}

} // namespace hyperseries
