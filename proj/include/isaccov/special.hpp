#pragma once

// Special functions needed by the coverage closed forms: the complementary
// error function (plain and exponentially scaled), the modified Bessel
// function I0, and the Gauss hypergeometric function 2F1 evaluated through
// its Euler integral representation.

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isaccov/quadrature.hpp"

namespace isaccov {

namespace detail {

inline constexpr double kTwoOverSqrtPi = 1.1283791670955125739;
inline constexpr double kOneOverSqrtPi = 0.5641895835477562869;

// erf via the cancellation-free confluent series,
//   erf(x) = (2/sqrt(pi)) e^{-x^2} sum_{n>=0} 2^n x^{2n+1} / (1*3*...*(2n+1)),
// accurate for |x| <= ~2.
inline double erf_series(double x) {
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x * x / (2.0 * n + 1.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return kTwoOverSqrtPi * std::exp(-x * x) * sum;
}

// Laplace continued fraction for sqrt(pi) e^{x^2} erfc(x), x >= 1.5:
//   1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
inline double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double c = 1.0 / tiny;
    double d = 1.0 / x;
    double value = d;
    for (int k = 1; k < 300; ++k) {
        const double ak = 0.5 * k;
        d = x + ak * d;
        if (std::abs(d) < tiny)
            d = tiny;
        c = x + ak / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        value *= delta;
        if (std::abs(delta - 1.0) < 1e-17)
            break;
    }
    return kOneOverSqrtPi * value;
}

}  // namespace detail

// exp(x^2) erfc(x). The two factors separately overflow/underflow around
// x ~ 26.6; the fused form stays finite for all x >= 0.
inline double erfcx(double x) {
    if (std::isnan(x))
        return x;
    if (x >= 1.5)
        return detail::erfcx_cf(x);
    if (x >= 0.0)
        return std::exp(x * x) * (1.0 - detail::erf_series(x));
    // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x < -26.6 as the true
    // value does.
    return 2.0 * std::exp(x * x) - erfcx(-x);
}

inline double erfc(double x) {
    if (std::isnan(x))
        return x;
    if (x < 0.0)
        return 2.0 - erfc(-x);
    if (x < 1.5)
        return 1.0 - detail::erf_series(x);
    return std::exp(-x * x) * detail::erfcx_cf(x);
}

// Modified Bessel function of the first kind, order zero. Power series; all
// terms are positive so there is no cancellation. Signals overflow where the
// result exceeds the double range (x ~ 713).
inline double bessel_i0(double x) {
    if (x < 0.0)
        throw std::domain_error("bessel_i0: requires x >= 0");
    if (x > 713.0)
        throw std::overflow_error("bessel_i0: result exceeds double range");
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum;
}

// exp(-x) I0(x), finite for all x >= 0. Series below the overflow knee, the
// standard asymptotic expansion beyond it.
inline double bessel_i0_scaled(double x) {
    if (x < 0.0)
        throw std::domain_error("bessel_i0_scaled: requires x >= 0");
    if (x <= 700.0)
        return std::exp(-x) * bessel_i0(x);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double num = (2.0 * k - 1.0) * (2.0 * k - 1.0);
        term *= num / (8.0 * k * x);
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

// Gauss hypergeometric function 2F1(a, b; c; t) for c > b > 0 and t <= 0,
// via the Euler integral
//   2F1 = Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 z^{b-1}(1-z)^{c-b-1}(1-tz)^{-a} dz.
// The endpoint behaviour z^{b-1} with b < 1 is removed exactly by the change
// of variable z = u^{1/b}, which leaves a bounded integrand.
inline double gauss_2f1(double a, double b, double c, double t) {
    if (!(b > 0.0) || !(c > b))
        throw std::domain_error("gauss_2f1: requires c > b > 0");
    if (t > 0.0)
        throw std::domain_error("gauss_2f1: only t <= 0 is supported");
    if (t == 0.0)
        return 1.0;

    const double cb1 = c - b - 1.0;
    const double inv_b = 1.0 / b;
    auto integrand = [a, t, cb1, inv_b](double u) {
        double z = std::pow(u, inv_b);
        if (z >= 1.0)
            z = 1.0 - std::numeric_limits<double>::epsilon();
        double v = 1.0;
        if (cb1 != 0.0)
            v = std::pow(1.0 - z, cb1);
        return v * std::pow(1.0 - t * z, -a);
    };

    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-16;
    spec.max_subdivisions = 4096;
    const double integral = integrate_adaptive(integrand, 0.0, 1.0, spec).value;
    const double prefactor =
        std::exp(std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b));
    return prefactor * inv_b * integral;
}

}  // namespace isaccov
