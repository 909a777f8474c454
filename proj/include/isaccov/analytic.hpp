#pragma once

// Numerical evaluation of the coverage-probability integrals: the F kernel
//   F(eps, alpha, p(x), h) = int_h^inf x p(x) / (eps x^alpha + 1) dx
// that the interference Laplace transforms reduce to, the communication and
// sensing coverage theorems built on it, their non-blockage corollaries, and
// the six closed-form special cases.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "isaccov/channel.hpp"
#include "isaccov/quadrature.hpp"
#include "isaccov/special.hpp"

namespace isaccov {

struct NetworkParams {
    double lambda_bs = 1e-5;    // m^-2
    double noise_comm = 0.0;    // noise normalised by transmit power
    double noise_sens = 0.0;
    double threshold_comm = 1.0;  // linear SINR
    double threshold_sens = 1.0;

    void validate() const {
        if (!(lambda_bs > 0.0))
            throw std::invalid_argument("NetworkParams: lambda_bs must be > 0");
        if (!(noise_comm >= 0.0) || !(noise_sens >= 0.0))
            throw std::invalid_argument("NetworkParams: noise must be >= 0");
        if (!(threshold_comm > 0.0) || !(threshold_sens > 0.0))
            throw std::invalid_argument("NetworkParams: thresholds must be > 0");
    }
};

enum class CoverageMethod { analytic, closed_form, monte_carlo };

struct CoverageResult {
    double value = 0.0;
    CoverageMethod method = CoverageMethod::analytic;
    std::optional<double> quadrature_error;
    std::optional<std::pair<double, double>> ci;
};

// Weight p(x) selecting which thinning of the interferer field the kernel
// integrates over.
struct FKernelWeight {
    enum class Kind { zero, unit, los, nlos };
    Kind kind = Kind::unit;
    BlockageParams blockage{};

    static FKernelWeight zero() { return {Kind::zero, {}}; }
    static FKernelWeight unit() { return {Kind::unit, {}}; }
    static FKernelWeight los(const BlockageParams& b) { return {Kind::los, b}; }
    static FKernelWeight nlos(const BlockageParams& b) { return {Kind::nlos, b}; }
};

namespace detail {

// Unit-weight kernel by quadrature. The substitution v = x^{-(alpha-2)} turns
//   int_h^inf x / (eps x^alpha + 1) dx
// into a finite-interval integral with a bounded smooth integrand,
//   (1/(alpha-2)) int_0^{h^{-(alpha-2)}} dv / (eps + v^{alpha/(alpha-2)}),
// which the adaptive rule resolves reliably; the raw algebraic tail x^{1-alpha}
// defeats the error estimator as alpha approaches 2.
inline double unit_kernel_quadrature(double eps, double alpha, double h,
                                     const QuadratureSpec& spec) {
    const double q = alpha / (alpha - 2.0);
    auto g = [eps, q](double v) { return 1.0 / (eps + std::pow(v, q)); };
    if (h > 0.0)
        return integrate_adaptive(g, 0.0, std::pow(h, -(alpha - 2.0)), spec).value /
               (alpha - 2.0);
    // h = 0: split at x = 1 (v = 1); the head integral is smooth on [0, 1]
    const double head =
        integrate_adaptive(
            [eps, alpha](double x) { return x / (eps * std::pow(x, alpha) + 1.0); }, 0.0,
            1.0, spec)
            .value;
    const double tail = integrate_adaptive(g, 0.0, 1.0, spec).value / (alpha - 2.0);
    return head + tail;
}

}  // namespace detail

// F by adaptive quadrature. The unit and nlos weights have algebraic tails
// and require alpha > 2; the los weight decays exponentially for beta > 0 and
// converges for any alpha. The nlos weight is evaluated as the exact split
// (unit kernel) - (los kernel), keeping only exponentially decaying or
// finite-interval quadratures.
inline double f_kernel(double eps, double alpha, const FKernelWeight& w, double h,
                       const QuadratureSpec& spec) {
    if (w.kind == FKernelWeight::Kind::zero)
        return 0.0;
    if (!(eps > 0.0))
        throw std::domain_error("f_kernel: eps must be > 0");
    if (!(h >= 0.0))
        throw std::domain_error("f_kernel: h must be >= 0");

    const bool algebraic_tail =
        w.kind == FKernelWeight::Kind::unit || w.kind == FKernelWeight::Kind::nlos ||
        (w.kind == FKernelWeight::Kind::los && w.blockage.beta == 0.0);
    if (algebraic_tail && !(alpha > 2.0))
        throw std::domain_error("f_kernel: integral diverges for alpha <= 2 without an "
                                "exponentially decaying weight");

    switch (w.kind) {
        case FKernelWeight::Kind::unit:
            return detail::unit_kernel_quadrature(eps, alpha, h, spec);
        case FKernelWeight::Kind::los: {
            const BlockageParams b = w.blockage;
            if (b.beta == 0.0 && b.p == 0.0)
                return detail::unit_kernel_quadrature(eps, alpha, h, spec);
            if (b.beta == 0.0)
                return std::exp(-b.p) * detail::unit_kernel_quadrature(eps, alpha, h, spec);
            return integrate_semi_infinite(
                       [eps, alpha, b](double x) {
                           const double pl = prob_los(x, b);
                           if (pl == 0.0)
                               return 0.0;
                           return x * pl / (eps * std::pow(x, alpha) + 1.0);
                       },
                       h, spec)
                .value;
        }
        case FKernelWeight::Kind::nlos: {
            const double unit = detail::unit_kernel_quadrature(eps, alpha, h, spec);
            const double los = f_kernel(eps, alpha, FKernelWeight::los(w.blockage), h, spec);
            return std::max(0.0, unit - los);
        }
        default:
            return 0.0;
    }
}

// Unit-weight F through the hypergeometric closed form,
//   F(eps, alpha, 1, h) = h^{-(alpha-2)} 2F1(1, (alpha-2)/alpha; 2 - 2/alpha;
//                                            -h^{-alpha}/eps) / (eps (alpha-2)),
// and, at h = 0, the Mellin value eps^{-2/alpha} pi / (alpha sin(2 pi/alpha)).
inline double f_kernel_closed(double eps, double alpha, double h) {
    if (!(eps > 0.0))
        throw std::domain_error("f_kernel_closed: eps must be > 0");
    if (!(alpha > 2.0))
        throw std::domain_error("f_kernel_closed: requires alpha > 2");
    if (!(h >= 0.0))
        throw std::domain_error("f_kernel_closed: h must be >= 0");
    if (h == 0.0)
        return std::pow(eps, -2.0 / alpha) * kPi / (alpha * std::sin(2.0 * kPi / alpha));
    const double b = (alpha - 2.0) / alpha;
    const double c = 2.0 - 2.0 / alpha;
    const double t = -std::pow(h, -alpha) / eps;
    return std::pow(h, -(alpha - 2.0)) * gauss_2f1(1.0, b, c, t) / (eps * (alpha - 2.0));
}

// Unit-weight F at alpha = 4: (pi - 2 atan(h^2 sqrt(eps))) / (4 sqrt(eps)).
inline double f_kernel_unit_alpha4(double eps, double h) {
    if (!(eps > 0.0))
        throw std::domain_error("f_kernel_unit_alpha4: eps must be > 0");
    const double s = std::sqrt(eps);
    return (kPi - 2.0 * std::atan(h * h * s)) / (4.0 * s);
}

namespace detail {

// Memo for F values within a single coverage evaluation, keyed bitwise on
// (eps, h, alpha, weight kind) so lookups are exact.
class KernelCache {
  public:
    template <class Compute>
    double get(double eps, double alpha, int kind, double h, const Compute& compute) {
        Key key{bits(eps), bits(h), bits(alpha), kind};
        auto it = map_.find(key);
        if (it != map_.end())
            return it->second;
        const double value = compute();
        map_.emplace(key, value);
        return value;
    }

  private:
    struct Key {
        std::uint64_t eps, h, alpha;
        int kind;
        bool operator==(const Key& o) const {
            return eps == o.eps && h == o.h && alpha == o.alpha && kind == o.kind;
        }
    };
    struct Hash {
        std::size_t operator()(const Key& k) const {
            std::uint64_t x = k.eps * 0x9E3779B97F4A7C15ull;
            x ^= k.h + 0x9E3779B97F4A7C15ull + (x << 6) + (x >> 2);
            x ^= k.alpha + 0x9E3779B97F4A7C15ull + (x << 6) + (x >> 2);
            x ^= static_cast<std::uint64_t>(k.kind) + (x << 6) + (x >> 2);
            return static_cast<std::size_t>(x);
        }
    };
    static std::uint64_t bits(double v) {
        std::uint64_t out;
        std::memcpy(&out, &v, sizeof(out));
        return out;
    }
    std::unordered_map<Key, double, Hash> map_;
};

inline double clamp_probability(double v) {
    if (v < 0.0)
        return 0.0;
    if (v > 1.0)
        return 1.0;
    return v;
}

inline void require_series(const FadingParams& f, const char* who) {
    if (!f.has_series())
        throw std::invalid_argument(std::string(who) +
                                    ": analytic path needs the tabulated Rician series "
                                    "(K in {1, 5, 10})");
}

}  // namespace detail

// Communication coverage probability with blockage: the outer integral runs
// the association-distance density against the noise factor and the LoS/NLoS
// interference Laplace exponents. Inner kernels run at a tolerance ten times
// tighter than the outer integral so the error budget stays with the latter.
inline CoverageResult comm_coverage(const NetworkParams& net, const PathLossParams& ch,
                                    const BlockageParams& b, const FadingParams& f,
                                    const QuadratureSpec& spec) {
    net.validate();
    ch.validate();
    b.validate();
    f.validate();
    detail::require_series(f, "comm_coverage");
    if (!(b.beta > 0.0))
        throw std::domain_error("comm_coverage: beta = 0 requires the non-blockage corollary");

    const double T = net.threshold_comm;
    const double noise = net.noise_comm;
    const double lambda = net.lambda_bs;
    const QuadratureSpec inner = spec.tightened(0.1);
    detail::KernelCache cache;

    auto los_kernel = [&](double eps, double h) {
        return cache.get(eps, ch.alpha_l, 1, h, [&] {
            return f_kernel(eps, ch.alpha_l, FKernelWeight::los(b), h, inner);
        });
    };
    auto nlos_kernel = [&](double eps) {
        return cache.get(eps, ch.alpha_n, 2, 0.0, [&] {
            return f_kernel(eps, ch.alpha_n, FKernelWeight::nlos(b), 0.0, inner);
        });
    };

    auto integrand = [&](double r) {
        const double fr = nearest_visible_pdf(r, lambda, b);
        if (fr == 0.0)
            return 0.0;
        const double r_al = std::pow(r, ch.alpha_l);
        double acc = 0.0;
        for (const auto& tn : f.series) {
            const double denom = tn.rate * r_al * T;
            double los_sum = 0.0;
            for (const auto& tm : f.series)
                los_sum += tm.weight * los_kernel(tm.rate / denom, r);
            const double nlos = nlos_kernel(f.mu_n_comm * ch.k_l / (denom * ch.k_n));
            const double exponent =
                -denom * noise / ch.k_l - 2.0 * kPi * lambda * (los_sum + nlos);
            acc += tn.weight * std::exp(exponent);
        }
        return acc * fr;
    };

    const IntegralEstimate est = integrate_semi_infinite(integrand, 0.0, spec);
    return {detail::clamp_probability(est.value), CoverageMethod::analytic, est.error_bound,
            std::nullopt};
}

// Exponent contributions of the sensing integrand at serving distance r,
// split into the noise factor and the three interference families. The noise
// and LoS/NLoS parts depend on (T, mean RCS) only through their ratio; the
// TRC part depends on T alone.
struct SensExponentParts {
    double noise = 0.0;
    double los = 0.0;
    double nlos = 0.0;
    double trc = 0.0;

    double total() const { return noise + los + nlos + trc; }
};

inline SensExponentParts sens_exponent_parts(double r, const NetworkParams& net,
                                             const PathLossParams& ch, const BlockageParams& b,
                                             const FadingParams& f, const QuadratureSpec& spec) {
    detail::require_series(f, "sens_exponent_parts");
    const double T = net.threshold_sens;
    const double lambda = net.lambda_bs;
    const double r_ar = std::pow(r, ch.alpha_r);
    const double sigma_kr = f.mean_rcs * ch.k_r;

    SensExponentParts parts;
    parts.noise = r_ar * T * net.noise_sens / sigma_kr;
    double los_sum = 0.0;
    for (const auto& tn : f.series)
        los_sum += tn.weight * f_kernel(tn.rate * sigma_kr / (r_ar * T * ch.k_l), ch.alpha_l,
                                        FKernelWeight::los(b), r, spec);
    parts.los = 2.0 * kPi * lambda * los_sum;
    parts.nlos = 2.0 * kPi * lambda *
                 f_kernel(f.mu_n_sens * sigma_kr / (r_ar * T * ch.k_n), ch.alpha_n,
                          FKernelWeight::nlos(b), 0.0, spec);
    parts.trc = 2.0 * kPi * lambda *
                f_kernel(std::pow(r, ch.alpha_l - ch.alpha_r) / T, ch.alpha_l,
                         FKernelWeight::los(b), r, spec);
    return parts;
}

// Sensing coverage probability with blockage: one exponential-RCS desired
// echo against noise plus LoS, NLoS and target-reflection-cascade
// interference.
inline CoverageResult sens_coverage(const NetworkParams& net, const PathLossParams& ch,
                                    const BlockageParams& b, const FadingParams& f,
                                    const QuadratureSpec& spec) {
    net.validate();
    ch.validate();
    b.validate();
    f.validate();
    detail::require_series(f, "sens_coverage");
    if (!(b.beta > 0.0))
        throw std::domain_error("sens_coverage: beta = 0 requires the non-blockage corollary");

    const double T = net.threshold_sens;
    const double noise = net.noise_sens;
    const double lambda = net.lambda_bs;
    const double sigma_kr = f.mean_rcs * ch.k_r;
    const QuadratureSpec inner = spec.tightened(0.1);
    detail::KernelCache cache;

    auto los_kernel = [&](double eps, double h) {
        return cache.get(eps, ch.alpha_l, 1, h, [&] {
            return f_kernel(eps, ch.alpha_l, FKernelWeight::los(b), h, inner);
        });
    };
    auto nlos_kernel = [&](double eps) {
        return cache.get(eps, ch.alpha_n, 2, 0.0, [&] {
            return f_kernel(eps, ch.alpha_n, FKernelWeight::nlos(b), 0.0, inner);
        });
    };

    auto integrand = [&](double r) {
        const double fr = nearest_visible_pdf(r, lambda, b);
        if (fr == 0.0)
            return 0.0;
        const double r_ar = std::pow(r, ch.alpha_r);
        double los_sum = 0.0;
        for (const auto& tn : f.series)
            los_sum += tn.weight * los_kernel(tn.rate * sigma_kr / (r_ar * T * ch.k_l), r);
        const double nlos = nlos_kernel(f.mu_n_sens * sigma_kr / (r_ar * T * ch.k_n));
        const double trc = los_kernel(std::pow(r, ch.alpha_l - ch.alpha_r) / T, r);
        const double exponent =
            -r_ar * T * noise / sigma_kr - 2.0 * kPi * lambda * (los_sum + nlos + trc);
        return std::exp(exponent) * fr;
    };

    const IntegralEstimate est = integrate_semi_infinite(integrand, 0.0, spec);
    return {detail::clamp_probability(est.value), CoverageMethod::analytic, est.error_bound,
            std::nullopt};
}

// Non-blockage communication coverage (every link LoS, nearest association).
// The unit-weight kernels reduce to r^2 xi_n with an r-independent
// hypergeometric factor, which is precomputed per series pair.
inline CoverageResult corollary1(const NetworkParams& net, const PathLossParams& ch,
                                 const FadingParams& f, const QuadratureSpec& spec) {
    net.validate();
    ch.validate();
    f.validate();
    detail::require_series(f, "corollary1");
    if (!(ch.alpha_l > 2.0))
        throw std::domain_error("corollary1: unit-weight kernel diverges for alpha_l <= 2");

    const double T = net.threshold_comm;
    const double alpha = ch.alpha_l;
    const double lambda = net.lambda_bs;
    const std::size_t n_terms = f.series.size();

    std::vector<double> xi(n_terms, 0.0), theta_noise(n_terms, 0.0);
    for (std::size_t n = 0; n < n_terms; ++n) {
        for (const auto& tm : f.series) {
            const double ratio = f.series[n].rate * T / tm.rate;
            xi[n] += tm.weight * ratio *
                     gauss_2f1(1.0, (alpha - 2.0) / alpha, 2.0 - 2.0 / alpha, -ratio) /
                     (alpha - 2.0);
        }
        theta_noise[n] = f.series[n].rate * T * net.noise_comm / ch.k_l;
    }

    auto integrand = [&](double r) {
        const double fr = nearest_pdf(r, lambda);
        if (fr == 0.0)
            return 0.0;
        const double r_al = std::pow(r, alpha);
        double acc = 0.0;
        for (std::size_t n = 0; n < n_terms; ++n)
            acc += f.series[n].weight *
                   std::exp(-theta_noise[n] * r_al - 2.0 * kPi * lambda * xi[n] * r * r);
        return acc * fr;
    };

    const IntegralEstimate est = integrate_semi_infinite(integrand, 0.0, spec);
    return {detail::clamp_probability(est.value), CoverageMethod::analytic, est.error_bound,
            std::nullopt};
}

// Non-blockage sensing coverage. Keeps the TRC interference term by default;
// the special cases below assume it dropped (cooperative reception), which
// include_trc = false reproduces.
inline CoverageResult corollary2(const NetworkParams& net, const PathLossParams& ch,
                                 const FadingParams& f, const QuadratureSpec& spec,
                                 bool include_trc = true) {
    net.validate();
    ch.validate();
    f.validate();
    detail::require_series(f, "corollary2");
    if (!(ch.alpha_l > 2.0))
        throw std::domain_error("corollary2: unit-weight kernel diverges for alpha_l <= 2");

    const double T = net.threshold_sens;
    const double lambda = net.lambda_bs;
    const double sigma_kr = f.mean_rcs * ch.k_r;

    auto integrand = [&](double r) {
        const double fr = nearest_pdf(r, lambda);
        if (fr == 0.0)
            return 0.0;
        const double r_ar = std::pow(r, ch.alpha_r);
        double los_sum = 0.0;
        for (const auto& tn : f.series)
            los_sum +=
                tn.weight * f_kernel_closed(tn.rate * sigma_kr / (r_ar * T * ch.k_l),
                                            ch.alpha_l, r);
        double trc = 0.0;
        if (include_trc)
            trc = f_kernel_closed(std::pow(r, ch.alpha_l - ch.alpha_r) / T, ch.alpha_l, r);
        const double exponent =
            -r_ar * T * net.noise_sens / sigma_kr - 2.0 * kPi * lambda * (los_sum + trc);
        return std::exp(exponent) * fr;
    };

    const IntegralEstimate est = integrate_semi_infinite(integrand, 0.0, spec);
    return {detail::clamp_probability(est.value), CoverageMethod::analytic, est.error_bound,
            std::nullopt};
}

namespace detail {

// theta_n of the alpha_l = 4 communication closed forms.
inline std::vector<double> sc_theta_comm(double threshold, const FadingParams& f) {
    std::vector<double> theta(f.series.size(), 0.0);
    for (std::size_t n = 0; n < f.series.size(); ++n) {
        for (const auto& tm : f.series) {
            const double x = std::sqrt(tm.rate / (f.series[n].rate * threshold));
            theta[n] += tm.weight * (kPi - 2.0 * std::atan(x)) / (4.0 * x);
        }
    }
    return theta;
}

// theta of the alpha = 4 sensing closed forms.
inline double sc_theta_sens(double threshold, const PathLossParams& ch, const FadingParams& f) {
    double theta = 0.0;
    for (const auto& tn : f.series) {
        const double x = std::sqrt(tn.rate * f.mean_rcs * ch.k_r / (threshold * ch.k_l));
        theta += tn.weight * (kPi - 2.0 * std::atan(x)) / (4.0 * x);
    }
    return theta;
}

}  // namespace detail

// No blockage, noise, alpha_l = 4. The Gaussian-tail integral collapses to a
// scaled-erfc evaluation; exp[(lambda Psi)^2] erfc[lambda Psi] is computed
// fused since the factors overflow separately around lambda Psi ~ 27.
inline CoverageResult special_case_1(const NetworkParams& net, const PathLossParams& ch,
                                     const FadingParams& f) {
    net.validate();
    ch.validate();
    f.validate();
    detail::require_series(f, "special_case_1");
    if (ch.alpha_l != 4.0)
        throw std::invalid_argument("special_case_1: requires alpha_l = 4");
    if (!(net.noise_comm > 0.0))
        throw std::invalid_argument("special_case_1: requires noise > 0 (use special_case_3)");

    const double T = net.threshold_comm;
    const double lambda = net.lambda_bs;
    const std::vector<double> theta = detail::sc_theta_comm(T, f);

    double sum = 0.0;
    for (std::size_t n = 0; n < f.series.size(); ++n) {
        const double vartheta = f.series[n].rate * T * net.noise_comm / ch.k_l;
        const double psi = kPi * (1.0 + 2.0 * theta[n]) / (2.0 * std::sqrt(vartheta));
        sum += f.series[n].weight * std::sqrt(kPi / vartheta) * erfcx(lambda * psi);
    }
    return {detail::clamp_probability(0.5 * kPi * lambda * sum), CoverageMethod::closed_form,
            std::nullopt, std::nullopt};
}

// No blockage, no noise, alpha_l > 2: sum_n w_n / (1 + 2 xi_n); independent of
// the BS density.
inline double special_case_2(double threshold, double alpha_l, const FadingParams& f) {
    f.validate();
    detail::require_series(f, "special_case_2");
    if (!(alpha_l > 2.0))
        throw std::invalid_argument("special_case_2: requires alpha_l > 2");
    if (!(threshold > 0.0))
        throw std::invalid_argument("special_case_2: threshold must be > 0");

    double sum = 0.0;
    for (const auto& tn : f.series) {
        double xi = 0.0;
        for (const auto& tm : f.series) {
            const double ratio = tn.rate * threshold / tm.rate;
            xi += tm.weight * ratio *
                  gauss_2f1(1.0, (alpha_l - 2.0) / alpha_l, 2.0 - 2.0 / alpha_l, -ratio) /
                  (alpha_l - 2.0);
        }
        sum += tn.weight / (1.0 + 2.0 * xi);
    }
    return detail::clamp_probability(sum);
}

// No blockage, no noise, alpha_l = 4: sum_n w_n / (1 + 2 theta_n).
inline double special_case_3(double threshold, const FadingParams& f) {
    f.validate();
    detail::require_series(f, "special_case_3");
    if (!(threshold > 0.0))
        throw std::invalid_argument("special_case_3: threshold must be > 0");
    const std::vector<double> theta = detail::sc_theta_comm(threshold, f);
    double sum = 0.0;
    for (std::size_t n = 0; n < f.series.size(); ++n)
        sum += f.series[n].weight / (1.0 + 2.0 * theta[n]);
    return detail::clamp_probability(sum);
}

// Sensing: no blockage, noise, no TRC, alpha_l = alpha_r = 4.
inline CoverageResult special_case_4(const NetworkParams& net, const PathLossParams& ch,
                                     const FadingParams& f) {
    net.validate();
    ch.validate();
    f.validate();
    detail::require_series(f, "special_case_4");
    if (ch.alpha_l != 4.0 || ch.alpha_r != 4.0)
        throw std::invalid_argument("special_case_4: requires alpha_l = alpha_r = 4");
    if (!(net.noise_sens > 0.0))
        throw std::invalid_argument("special_case_4: requires noise > 0 (use special_case_6)");

    const double T = net.threshold_sens;
    const double lambda = net.lambda_bs;
    const double theta = detail::sc_theta_sens(T, ch, f);
    const double vartheta = T * net.noise_sens / (f.mean_rcs * ch.k_r);
    const double psi = kPi * (1.0 + 2.0 * theta) / (2.0 * std::sqrt(vartheta));
    const double value = 0.5 * kPi * lambda * std::sqrt(kPi / vartheta) * erfcx(lambda * psi);
    return {detail::clamp_probability(value), CoverageMethod::closed_form, std::nullopt,
            std::nullopt};
}

// Sensing: no blockage, no noise, no TRC, alpha_l = alpha_r > 2: 1/(1 + 2 xi).
inline double special_case_5(double threshold, double alpha_l, const PathLossParams& ch,
                             const FadingParams& f) {
    f.validate();
    detail::require_series(f, "special_case_5");
    if (!(alpha_l > 2.0))
        throw std::invalid_argument("special_case_5: requires alpha_l > 2");
    if (!(threshold > 0.0))
        throw std::invalid_argument("special_case_5: threshold must be > 0");

    double xi = 0.0;
    for (const auto& tn : f.series) {
        const double ratio = tn.rate * f.mean_rcs * ch.k_r / (threshold * ch.k_l);
        xi += tn.weight *
              gauss_2f1(1.0, (alpha_l - 2.0) / alpha_l, 2.0 - 2.0 / alpha_l, -1.0 / ratio) /
              (ratio * (alpha_l - 2.0));
    }
    return detail::clamp_probability(1.0 / (1.0 + 2.0 * xi));
}

// Sensing: no blockage, no noise, no TRC, alpha_l = alpha_r = 4: 1/(1 + 2 theta).
inline double special_case_6(double threshold, const PathLossParams& ch,
                             const FadingParams& f) {
    f.validate();
    detail::require_series(f, "special_case_6");
    if (!(threshold > 0.0))
        throw std::invalid_argument("special_case_6: threshold must be > 0");
    const double theta = detail::sc_theta_sens(threshold, ch, f);
    return detail::clamp_probability(1.0 / (1.0 + 2.0 * theta));
}

}  // namespace isaccov
