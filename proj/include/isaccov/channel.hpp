#pragma once

// Propagation, blockage and fading models shared by the analytic and Monte
// Carlo paths: power-law path loss for LoS/NLoS/echo links, the distance-
// dependent Bernoulli blockage law exp(-(beta r + p)), the nearest-visible-BS
// association distance density, and the Rician/Rayleigh/exponential fading
// laws with the built-in exponential-series coefficients.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "isaccov/special.hpp"

namespace isaccov {

inline constexpr double kPi = 3.14159265358979323846;

enum class PathKind { los, nlos, echo };

struct PathLossParams {
    double k_l = 0.0;  // linear gains
    double k_n = 0.0;
    double k_r = 0.0;
    double alpha_l = 2.0;  // exponents
    double alpha_n = 3.2;
    double alpha_r = 4.0;
    // When set, k_r must equal k_l/(4 pi) and alpha_r must equal 2 alpha_l
    // (the monostatic radar relation); violations are rejected by validate().
    bool enforce_echo_consistency = false;

    static PathLossParams from_db(double k_l_db, double k_n_db, double k_r_db, double alpha_l,
                                  double alpha_n, double alpha_r) {
        PathLossParams p;
        p.k_l = std::pow(10.0, k_l_db / 10.0);
        p.k_n = std::pow(10.0, k_n_db / 10.0);
        p.k_r = std::pow(10.0, k_r_db / 10.0);
        p.alpha_l = alpha_l;
        p.alpha_n = alpha_n;
        p.alpha_r = alpha_r;
        return p;
    }

    void validate() const {
        if (!(k_l > 0.0) || !(k_n > 0.0) || !(k_r > 0.0))
            throw std::invalid_argument("PathLossParams: gains must be positive");
        if (!(alpha_l >= 2.0))
            throw std::invalid_argument("PathLossParams: alpha_l must be >= 2");
        if (!(alpha_n > 2.0))
            throw std::invalid_argument("PathLossParams: alpha_n must be > 2");
        if (!(alpha_r > 2.0))
            throw std::invalid_argument("PathLossParams: alpha_r must be > 2");
        if (enforce_echo_consistency) {
            const double expected = k_l / (4.0 * kPi);
            if (std::abs(k_r - expected) > 1e-12 * expected || alpha_r != 2.0 * alpha_l)
                throw std::invalid_argument(
                    "PathLossParams: echo consistency requires k_r = k_l/(4 pi) and "
                    "alpha_r = 2 alpha_l");
        }
    }
};

struct BlockageParams {
    double beta = 0.0;  // per-metre blockage rate
    double p = 0.0;     // blocked area fraction

    void validate() const {
        if (!(beta >= 0.0) || !(p >= 0.0))
            throw std::invalid_argument("BlockageParams: beta and p must be >= 0");
    }
};

// (beta, p) from the Boolean rectangle model: centres a PPP of density
// lambda_bk, i.i.d. length/width with the given means.
inline std::pair<double, double> derive_beta_p(double lambda_bk, double mean_len,
                                               double mean_wid) {
    if (lambda_bk < 0.0 || mean_len < 0.0 || mean_wid < 0.0)
        throw std::invalid_argument("derive_beta_p: arguments must be >= 0");
    return {2.0 * lambda_bk * (mean_len + mean_wid) / kPi, lambda_bk * mean_len * mean_wid};
}

inline double path_loss(const PathLossParams& pl, PathKind kind, double r) {
    if (!(r > 0.0))
        throw std::domain_error("path_loss: r must be > 0");
    switch (kind) {
        case PathKind::los:
            return pl.k_l * std::pow(r, -pl.alpha_l);
        case PathKind::nlos:
            return pl.k_n * std::pow(r, -pl.alpha_n);
        case PathKind::echo:
            return pl.k_r * std::pow(r, -pl.alpha_r);
    }
    throw std::logic_error("path_loss: unknown kind");
}

inline double prob_los(double r, const BlockageParams& b) {
    return std::exp(-(b.beta * r + b.p));
}

inline double prob_nlos(double r, const BlockageParams& b) { return 1.0 - prob_los(r, b); }

namespace detail {

// 1 - (1+x) e^{-x}, evaluated by series for small x where the direct form
// loses all significant digits.
inline double one_minus_one_plus_x_exp_mx(double x) {
    if (x > 0.5)
        return 1.0 - (1.0 + x) * std::exp(-x);
    // sum_{m>=2} (-1)^m (m-1)/m! x^m = x^2/2 - x^3/3 + x^4/8 - ...
    double term = 0.5 * x * x;  // m = 2
    double sum = term;
    for (int m = 3; m < 60; ++m) {
        term *= -x / m * (m - 1.0) / (m - 2.0);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

}  // namespace detail

// Exclusion-area integral U(r) = (e^{-p}/beta^2) [1 - (beta r + 1) e^{-beta r}].
inline double visible_exclusion_area(double r, const BlockageParams& b) {
    if (!(b.beta > 0.0))
        throw std::domain_error("visible_exclusion_area: beta must be > 0");
    return std::exp(-b.p) / (b.beta * b.beta) * detail::one_minus_one_plus_x_exp_mx(b.beta * r);
}

// Density of the distance to the nearest *visible* BS,
//   f(r) = 2 pi lambda r exp(-(beta r + p + 2 pi lambda U(r))).
// Not normalised: its total mass is visible_mass() below. For beta -> 0 the
// formula is 0/0; use nearest_pdf instead.
inline double nearest_visible_pdf(double r, double lambda_bs, const BlockageParams& b) {
    if (!(lambda_bs > 0.0))
        throw std::invalid_argument("nearest_visible_pdf: lambda_bs must be > 0");
    if (!(r >= 0.0))
        throw std::domain_error("nearest_visible_pdf: r must be >= 0");
    if (!(b.beta > 0.0))
        throw std::domain_error("nearest_visible_pdf: beta = 0 degenerates; use nearest_pdf");
    const double u = visible_exclusion_area(r, b);
    return 2.0 * kPi * lambda_bs * r *
           std::exp(-(b.beta * r + b.p + 2.0 * kPi * lambda_bs * u));
}

// Total mass of nearest_visible_pdf: 1 - exp(-2 pi e^{-p} lambda / beta^2).
// The deficit is the probability of having no visible BS at all.
inline double visible_mass(double lambda_bs, const BlockageParams& b) {
    if (!(b.beta > 0.0))
        throw std::domain_error("visible_mass: beta must be > 0");
    return 1.0 -
           std::exp(-2.0 * kPi * std::exp(-b.p) * lambda_bs / (b.beta * b.beta));
}

// Nearest-BS distance density without blockage: 2 pi lambda r exp(-lambda pi r^2).
inline double nearest_pdf(double r, double lambda_bs) {
    if (!(lambda_bs > 0.0))
        throw std::invalid_argument("nearest_pdf: lambda_bs must be > 0");
    if (!(r >= 0.0))
        throw std::domain_error("nearest_pdf: r must be >= 0");
    return 2.0 * kPi * lambda_bs * r * std::exp(-lambda_bs * kPi * r * r);
}

// ---------------------------------------------------------------------------
// Small-scale fading
// ---------------------------------------------------------------------------

struct ExpSeriesTerm {
    double weight;  // w_n (may be negative)
    double rate;    // u_n > 0
};

inline constexpr int kRicianSeriesTableVersion = 1;

struct RicianSeriesRow {
    double k;
    std::array<double, 4> w;
    std::array<double, 4> u;
};

// Four-term exponential-series fits of the unit-mean Rician power density for
// K in {1, 5, 10}. The weights sum to 1 only approximately (0.994 at K = 5);
// they are used as tabulated, without renormalisation.
inline constexpr std::array<RicianSeriesRow, 3> kRicianSeriesTable{{
    {1.0, {-0.8993, 5.9324, -5.4477, 1.4145}, {1.2475, 1.4298, 1.7436, 2.0326}},
    {5.0, {42.243, -189.99, 192.97, -44.229}, {2.9576, 3.7559, 4.1436, 4.7715}},
    {10.0, {177.75, -338.04, 297.00, -135.71}, {3.8741, 4.3761, 5.3985, 5.9937}},
}};

inline const RicianSeriesRow* rician_series_lookup(double k) {
    for (const auto& row : kRicianSeriesTable)
        if (row.k == k)
            return &row;
    return nullptr;
}

struct FadingParams {
    double rician_k = 10.0;
    // Exponential-series coefficients for the Rician power law; empty when the
    // factor K has no tabulated fit (Monte Carlo still works, the analytic
    // path rejects such parameters).
    std::vector<ExpSeriesTerm> series;
    double mu_n_comm = 1.0;  // Rayleigh power rates
    double mu_n_sens = 1.0;
    double mean_rcs = 100.0;  // m^2

    void validate() const {
        if (!(rician_k >= 0.0))
            throw std::invalid_argument("FadingParams: rician_k must be >= 0");
        if (!(mu_n_comm > 0.0) || !(mu_n_sens > 0.0))
            throw std::invalid_argument("FadingParams: Rayleigh rates must be > 0");
        if (!(mean_rcs > 0.0))
            throw std::invalid_argument("FadingParams: mean_rcs must be > 0");
        if (!series.empty()) {
            double wsum = 0.0;
            for (const auto& t : series) {
                if (!(t.rate > 0.0))
                    throw std::invalid_argument("FadingParams: series rates must be > 0");
                wsum += t.weight;
            }
            if (std::abs(wsum - 1.0) > 1e-2)
                throw std::invalid_argument(
                    "FadingParams: series weights must sum to 1 within 1e-2");
        }
    }

    bool has_series() const { return !series.empty(); }
};

// Fading parameters with the tabulated series for K in {1, 5, 10}; throws for
// any other K.
inline FadingParams fading_from_table(double rician_k, double mu_n_comm = 1.0,
                                      double mu_n_sens = 1.0, double mean_rcs = 100.0) {
    const RicianSeriesRow* row = rician_series_lookup(rician_k);
    if (row == nullptr)
        throw std::invalid_argument(
            "fading_from_table: no tabulated series for this Rician K (have 1, 5, 10)");
    FadingParams f;
    f.rician_k = rician_k;
    for (std::size_t i = 0; i < row->w.size(); ++i)
        f.series.push_back({row->w[i], row->u[i]});
    f.mu_n_comm = mu_n_comm;
    f.mu_n_sens = mu_n_sens;
    f.mean_rcs = mean_rcs;
    f.validate();
    return f;
}

// Fading parameters for Monte Carlo only: exact sampling needs just K, so any
// K >= 0 is accepted and no series is attached.
inline FadingParams fading_simulation_only(double rician_k, double mu_n_comm = 1.0,
                                           double mu_n_sens = 1.0, double mean_rcs = 100.0) {
    FadingParams f;
    f.rician_k = rician_k;
    f.mu_n_comm = mu_n_comm;
    f.mu_n_sens = mu_n_sens;
    f.mean_rcs = mean_rcs;
    f.validate();
    return f;
}

// Exact unit-mean Rician power density,
//   (1+K) e^{-K-(1+K)x} I0(2 sqrt(K(1+K)x)),
// written with the scaled Bessel function so it cannot overflow: the combined
// exponent is -(sqrt((1+K)x) - sqrt(K))^2 <= 0.
inline double rician_power_pdf_exact(double x, double k) {
    if (x < 0.0)
        throw std::domain_error("rician_power_pdf_exact: x must be >= 0");
    const double arg = 2.0 * std::sqrt(k * (1.0 + k) * x);
    return (1.0 + k) * bessel_i0_scaled(arg) * std::exp(arg - k - (1.0 + k) * x);
}

inline double rician_power_pdf_approx(double x, const std::vector<ExpSeriesTerm>& series) {
    if (x < 0.0)
        throw std::domain_error("rician_power_pdf_approx: x must be >= 0");
    double sum = 0.0;
    for (const auto& t : series)
        sum += t.weight * t.rate * std::exp(-t.rate * x);
    return sum;
}

inline double rician_power_ccdf_approx(double x, const std::vector<ExpSeriesTerm>& series) {
    if (x < 0.0)
        throw std::domain_error("rician_power_ccdf_approx: x must be >= 0");
    double sum = 0.0;
    for (const auto& t : series)
        sum += t.weight * std::exp(-t.rate * x);
    return sum;
}

}  // namespace isaccov
