#pragma once

// Adaptive Gauss-Kronrod quadrature on finite and semi-infinite intervals.
// Every routine is a pure function of its inputs and safe to call from any
// number of threads.

#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace isaccov {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2048;
    double truncation_mass = 1e-9;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
        if (max_subdivisions < 8)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 8");
        if (!(truncation_mass > 0.0) || truncation_mass > 1e-3)
            throw std::invalid_argument("QuadratureSpec: truncation_mass must be in (0, 1e-3]");
    }

    QuadratureSpec tightened(double factor) const {
        QuadratureSpec s = *this;
        s.rel_tol *= factor;
        s.abs_tol *= factor;
        return s;
    }
};

struct IntegralEstimate {
    double value = 0.0;
    double error_bound = 0.0;
    int subdivisions = 0;
};

// Thrown when the interval budget is exhausted before the tolerance is met.
// Carries the best estimate so callers can decide whether it is usable.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double best, double bound)
        : std::runtime_error(what), best_estimate(best), error_bound(bound) {}

    double best_estimate;
    double error_bound;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (positive half; node 0 last).
inline constexpr double kGk15Nodes[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
inline constexpr double kGk15KronrodW[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
// Gauss-7 weights attach to the odd-index Kronrod nodes and the centre.
inline constexpr double kGk15GaussW[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f0 = f(c);
    double kron = kGk15KronrodW[7] * f0;
    double gauss = kGk15GaussW[3] * f0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15Nodes[i];
        const double fsum = f(c + dx) + f(c - dx);
        kron += kGk15KronrodW[i] * fsum;
        if (i % 2 == 1)
            gauss += kGk15GaussW[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return Panel{a, b, kron, std::abs(kron - gauss)};
}

template <class F>
IntegralEstimate integrate_adaptive_impl(const F& f, double a, double b,
                                         const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b)) {
        if (a == b)
            return {0.0, 0.0, 0};
        throw std::invalid_argument("integrate_adaptive: requires a <= b");
    }

    std::priority_queue<Panel> panels;
    Panel first = gk15(f, a, b);
    panels.push(first);
    long double total = first.value;
    long double err = first.error;

    int splits = 0;
    while (true) {
        const double tol =
            std::max(spec.abs_tol, spec.rel_tol * std::abs(static_cast<double>(total)));
        if (static_cast<double>(err) <= tol)
            return {static_cast<double>(total), static_cast<double>(err), splits};
        if (splits >= spec.max_subdivisions)
            throw QuadratureError(
                "quadrature did not converge after " + std::to_string(splits) +
                    " subdivisions (error bound " + std::to_string(static_cast<double>(err)) + ")",
                static_cast<double>(total), static_cast<double>(err));

        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; its error is irreducible.
            err -= worst.error;
            worst.error = 0.0;
            panels.push(worst);
            continue;
        }
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        total += static_cast<long double>(left.value) + right.value - worst.value;
        err += static_cast<long double>(left.error) + right.error - worst.error;
        panels.push(left);
        panels.push(right);
        ++splits;
    }
}

}  // namespace detail

// Integral of f over [a, b] to the requested tolerance.
template <class F>
IntegralEstimate integrate_adaptive(F&& f, double a, double b, const QuadratureSpec& spec) {
    return detail::integrate_adaptive_impl(f, a, b, spec);
}

// Integral of f over [h, inf). The infinite limit is removed by the map
// x = h + t/(1-t), t in [0,1); Kronrod nodes are interior so f is never
// evaluated at the singular endpoint. Works for exponentially decaying tails
// and for algebraic tails x^(1-alpha) with alpha > 2.
template <class F>
IntegralEstimate integrate_semi_infinite(F&& f, double h, const QuadratureSpec& spec) {
    if (!(h >= 0.0) || !std::isfinite(h))
        throw std::invalid_argument("integrate_semi_infinite: lower limit must be finite and >= 0");
    auto g = [&f, h](double t) {
        const double um = 1.0 - t;
        const double x = h + t / um;
        if (!std::isfinite(x))
            return 0.0;
        const double fx = f(x);
        if (fx == 0.0)
            return 0.0;
        return fx / (um * um);
    };
    return detail::integrate_adaptive_impl(g, 0.0, 1.0, spec);
}

}  // namespace isaccov
