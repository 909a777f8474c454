#pragma once

// Snapshot-level simulation of the ISAC network. Snapshots are independent
// and fully reproducible: every random quantity flows through a counter-based
// substream keyed by (seed, snapshot index, purpose), so results do not
// depend on evaluation order.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isaccov/analytic.hpp"
#include "isaccov/channel.hpp"
#include "isaccov/rng.hpp"

namespace isaccov {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

enum class McTask { comm, sens };
enum class BlockageMode { bernoulli, boolean_rects };
enum class GeometryMode { matched, exact };
enum class RcsMode { independent_per_path, shared };

// Boolean rectangle blockage model: centres a PPP, orientation uniform,
// fixed length/width equal to the model means.
struct BooleanBlockageModel {
    double lambda_bk = 0.0;  // m^-2
    double mean_len = 0.0;   // m
    double mean_wid = 0.0;   // m
};

struct Scenario {
    double area_radius = 1000.0;  // m
    double lambda_bs = 1e-5;      // m^-2
    BlockageMode blockage_mode = BlockageMode::bernoulli;
    BlockageParams bernoulli{};            // used in bernoulli mode
    BooleanBlockageModel boolean_model{};  // used in boolean mode
    GeometryMode geometry_mode = GeometryMode::matched;
    RcsMode rcs_mode = RcsMode::independent_per_path;
    // The target-reflection-cascade interference can be switched off to match
    // the cooperative-reception assumption of the no-TRC closed forms.
    bool sens_include_trc = true;
    std::uint64_t seed = 1;

    void validate() const {
        if (!(area_radius > 0.0))
            throw std::invalid_argument("Scenario: area_radius must be > 0");
        if (!(lambda_bs > 0.0))
            throw std::invalid_argument("Scenario: lambda_bs must be > 0");
        bernoulli.validate();
    }

    // Effective blockage parameters independent of the mode.
    BlockageParams effective_blockage() const {
        if (blockage_mode == BlockageMode::bernoulli)
            return bernoulli;
        auto [beta, p] =
            derive_beta_p(boolean_model.lambda_bk, boolean_model.mean_len,
                          boolean_model.mean_wid);
        return {beta, p};
    }
};

namespace detail {

// Smallest radius beyond which the visible-association mass is below tol.
// The mass past r is exp(-2 pi lambda U(r)) - exp(-2 pi lambda U(inf)),
// monotone decreasing, so a bisection suffices.
inline double association_tail_radius(double lambda_bs, const BlockageParams& b, double tol) {
    const double two_pi_lambda = 2.0 * kPi * lambda_bs;
    const double u_inf = std::exp(-b.p) / (b.beta * b.beta);
    auto tail = [&](double r) {
        return std::exp(-two_pi_lambda * visible_exclusion_area(r, b)) -
               std::exp(-two_pi_lambda * u_inf);
    };
    double lo = 1.0, hi = 1e7;
    if (tail(hi) > tol)
        return hi;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > tol ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace detail

// Interferers are generated out to the largest of the configured radius, the
// blockage decay scale and the association scale, so truncation bias stays
// below Monte Carlo noise. The blockage term 5/beta is bounded by the radius
// where the visible-association mass is exhausted; otherwise it diverges as
// beta -> 0 although nothing beyond the association scale matters there.
inline double generation_radius(const Scenario& sc) {
    const BlockageParams b = sc.effective_blockage();
    double radius = std::max(sc.area_radius, 5.0 / std::sqrt(kPi * sc.lambda_bs));
    if (b.beta > 0.0)
        radius = std::max(radius, std::min(5.0 / b.beta,
                                           detail::association_tail_radius(
                                               sc.lambda_bs, b, 1e-4)));
    return radius;
}

struct Snapshot {
    std::vector<Vec2> bs_positions;
    std::vector<char> los_flags;  // link to the typical node at the origin
    std::optional<std::size_t> serving;
    std::optional<double> sinr;  // absent iff no visible BS
    int clamped_links = 0;       // links shorter than the 1 m far-field floor
};

struct Estimate {
    double mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t n = 0;
};

namespace detail {

// Links below 1 m are clamped: a PPP point arbitrarily close to the origin
// would otherwise produce unbounded received power.
inline constexpr double kMinLinkDistance = 1.0;

inline double clamp_link(double d, int& clamped) {
    if (d < kMinLinkDistance) {
        ++clamped;
        return kMinLinkDistance;
    }
    return d;
}

enum StreamPurpose : std::uint64_t {
    kBsCount = 1,
    kBsPosition = 2,
    kLosFlags = 3,
    kFading = 4,
    kRcs = 5,
    kRectField = 6,
    kHatFlags = 7,
};

inline std::uint64_t purpose_tag(McTask task, StreamPurpose p) {
    return static_cast<std::uint64_t>(p) + (task == McTask::sens ? 1000 : 0);
}

}  // namespace detail

// Oriented rectangle (centre, half extents, rotation).
struct Rect {
    Vec2 centre;
    double half_len = 0.0;
    double half_wid = 0.0;
    double cos_t = 1.0;
    double sin_t = 0.0;

    double bounding_radius() const { return std::hypot(half_len, half_wid); }
};

// Segment/box overlap by slab clipping in the rectangle frame (separating
// axes of the box; a segment needs no further axes for the boolean query
// because it is clipped parametrically).
inline bool segment_intersects_rect(const Vec2& a, const Vec2& b, const Rect& rect) {
    const double ax = a.x - rect.centre.x, ay = a.y - rect.centre.y;
    const double bx = b.x - rect.centre.x, by = b.y - rect.centre.y;
    // rotate into the box frame
    const double au = ax * rect.cos_t + ay * rect.sin_t;
    const double av = -ax * rect.sin_t + ay * rect.cos_t;
    const double bu = bx * rect.cos_t + by * rect.sin_t;
    const double bv = -bx * rect.sin_t + by * rect.cos_t;

    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {bu - au, bv - av};
    const double o[2] = {au, av};
    const double half[2] = {rect.half_len, rect.half_wid};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (o[axis] < -half[axis] || o[axis] > half[axis])
                return false;
            continue;
        }
        double near = (-half[axis] - o[axis]) / d[axis];
        double far = (half[axis] - o[axis]) / d[axis];
        if (near > far)
            std::swap(near, far);
        t0 = std::max(t0, near);
        t1 = std::min(t1, far);
        if (t0 > t1)
            return false;
    }
    return true;
}

// Bernoulli-mode visibility draw: LoS with probability exp(-(beta r + p)),
// independent across links.
inline bool los_indicator(double link_length, const BlockageParams& b, Substream& stream) {
    return stream.next_u01() < prob_los(link_length, b);
}

inline bool los_test(const Vec2& a, const Vec2& b, std::span<const Rect> rects) {
    const double min_x = std::min(a.x, b.x), max_x = std::max(a.x, b.x);
    const double min_y = std::min(a.y, b.y), max_y = std::max(a.y, b.y);
    for (const Rect& r : rects) {
        const double reach = r.bounding_radius();
        if (r.centre.x < min_x - reach || r.centre.x > max_x + reach ||
            r.centre.y < min_y - reach || r.centre.y > max_y + reach)
            continue;
        if (segment_intersects_rect(a, b, r))
            return false;
    }
    return true;
}

// Poisson field of BSs, uniform in the generation disk around the typical
// node at the origin.
inline std::vector<Vec2> sample_bs_field(const Scenario& sc, Substream& count_stream,
                                         Substream& position_stream) {
    const double radius = generation_radius(sc);
    const double mean = sc.lambda_bs * kPi * radius * radius;
    const std::uint64_t n = count_stream.next_poisson(mean);
    std::vector<Vec2> points(n);
    for (auto& pt : points) {
        const double r = radius * std::sqrt(position_stream.next_u01());
        const double phi = 2.0 * kPi * position_stream.next_u01();
        pt = {r * std::cos(phi), r * std::sin(phi)};
    }
    return points;
}

// Rectangle field covering the generation disk plus the rectangle reach.
inline std::vector<Rect> sample_rect_field(double region_radius,
                                           const BooleanBlockageModel& model,
                                           Substream& stream) {
    const double reach = 0.5 * std::hypot(model.mean_len, model.mean_wid);
    const double radius = region_radius + reach;
    const double mean = model.lambda_bk * kPi * radius * radius;
    const std::uint64_t n = stream.next_poisson(mean);
    std::vector<Rect> rects(n);
    for (auto& rect : rects) {
        const double r = radius * std::sqrt(stream.next_u01());
        const double phi = 2.0 * kPi * stream.next_u01();
        const double theta = kPi * stream.next_u01();
        rect.centre = {r * std::cos(phi), r * std::sin(phi)};
        rect.half_len = 0.5 * model.mean_len;
        rect.half_wid = 0.5 * model.mean_wid;
        rect.cos_t = std::cos(theta);
        rect.sin_t = std::sin(theta);
    }
    return rects;
}

namespace detail {

struct Field {
    std::vector<Vec2> positions;
    std::vector<double> dist;
    std::vector<char> los;
    std::vector<Rect> rects;  // boolean mode only
    std::optional<std::size_t> serving;
};

inline void select_serving(Field& field) {
    double best = std::numeric_limits<double>::infinity();
    field.serving.reset();
    for (std::size_t i = 0; i < field.positions.size(); ++i) {
        if (field.los[i] && field.dist[i] < best) {
            best = field.dist[i];
            field.serving = i;
        }
    }
}

inline Field sample_field(const Scenario& sc, McTask task, std::uint64_t index) {
    Field field;
    Substream count(sc.seed, index, purpose_tag(task, kBsCount));
    Substream position(sc.seed, index, purpose_tag(task, kBsPosition));
    field.positions = sample_bs_field(sc, count, position);
    field.dist.resize(field.positions.size());
    field.los.resize(field.positions.size());

    for (std::size_t i = 0; i < field.positions.size(); ++i)
        field.dist[i] = std::hypot(field.positions[i].x, field.positions[i].y);

    if (sc.blockage_mode == BlockageMode::bernoulli) {
        Substream los_stream(sc.seed, index, purpose_tag(task, kLosFlags));
        for (std::size_t i = 0; i < field.positions.size(); ++i)
            field.los[i] = los_indicator(field.dist[i], sc.bernoulli, los_stream);
    } else {
        Substream rect_stream(sc.seed, index, purpose_tag(task, kRectField));
        field.rects = sample_rect_field(generation_radius(sc), sc.boolean_model, rect_stream);
        for (std::size_t i = 0; i < field.positions.size(); ++i)
            field.los[i] = los_test({0.0, 0.0}, field.positions[i], field.rects);
    }

    select_serving(field);
    return field;
}

inline Field make_field(std::vector<Vec2> positions, std::vector<char> los) {
    Field field;
    field.positions = std::move(positions);
    field.los = std::move(los);
    field.dist.resize(field.positions.size());
    for (std::size_t i = 0; i < field.positions.size(); ++i)
        field.dist[i] = std::hypot(field.positions[i].x, field.positions[i].y);
    select_serving(field);
    return field;
}

}  // namespace detail

namespace detail {

inline Snapshot comm_snapshot_on_field(Field field, const Scenario& sc,
                                       const PathLossParams& ch, const FadingParams& f,
                                       double scaled_noise, std::uint64_t index) {
    Snapshot snap;
    snap.bs_positions = std::move(field.positions);
    snap.los_flags = field.los;
    snap.serving = field.serving;
    if (!field.serving.has_value())
        return snap;

    Substream fade(sc.seed, index, detail::purpose_tag(McTask::comm, detail::kFading));
    const std::size_t s = *field.serving;
    const double r0 = detail::clamp_link(field.dist[s], snap.clamped_links);
    const double signal =
        sample_rician_power(f.rician_k, fade) * ch.k_l * std::pow(r0, -ch.alpha_l);

    double interference = 0.0;
    for (std::size_t i = 0; i < snap.bs_positions.size(); ++i) {
        if (i == s)
            continue;
        const double d = detail::clamp_link(field.dist[i], snap.clamped_links);
        if (field.los[i])
            interference +=
                sample_rician_power(f.rician_k, fade) * ch.k_l * std::pow(d, -ch.alpha_l);
        else
            interference += sample_rayleigh_power(f.mu_n_comm, fade) * ch.k_n *
                            std::pow(d, -ch.alpha_n);
    }

    const double denom = interference + scaled_noise;
    snap.sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
    return snap;
}

inline Snapshot sens_snapshot_on_field(Field field, const Scenario& sc,
                                       const PathLossParams& ch, const FadingParams& f,
                                       double scaled_noise, std::uint64_t index) {
    Snapshot snap;
    snap.bs_positions = std::move(field.positions);
    snap.los_flags = field.los;
    snap.serving = field.serving;
    if (!field.serving.has_value())
        return snap;

    Substream fade(sc.seed, index, detail::purpose_tag(McTask::sens, detail::kFading));
    Substream rcs(sc.seed, index, detail::purpose_tag(McTask::sens, detail::kRcs));
    Substream hat(sc.seed, index, detail::purpose_tag(McTask::sens, detail::kHatFlags));

    const std::size_t s = *field.serving;
    const Vec2 serving_pos = snap.bs_positions[s];
    const double r0_raw = field.dist[s];
    const double r0 = detail::clamp_link(r0_raw, snap.clamped_links);
    const double sigma0 = sample_rcs(f.mean_rcs, rcs);
    const double signal = sigma0 * ch.k_r * std::pow(r0, -ch.alpha_r);

    double interference = 0.0;
    for (std::size_t i = 0; i < snap.bs_positions.size(); ++i) {
        if (i == s)
            continue;
        const double d_tilde = detail::clamp_link(field.dist[i], snap.clamped_links);

        // Target reflection cascade: BS_i -> target -> serving BS, gated by
        // the BS_i/target visibility flag; both legs decay with alpha_l.
        if (sc.sens_include_trc && field.los[i]) {
            const double sigma_i =
                sc.rcs_mode == RcsMode::shared ? sigma0 : sample_rcs(f.mean_rcs, rcs);
            interference += sigma_i * ch.k_r * std::pow(d_tilde, -ch.alpha_l) *
                            std::pow(r0, -ch.alpha_l);
        }

        if (sc.geometry_mode == GeometryMode::matched) {
            bool hat_los;
            if (sc.blockage_mode == BlockageMode::bernoulli)
                hat_los = hat.next_u01() < prob_los(field.dist[i], sc.bernoulli);
            else
                hat_los = los_test(serving_pos, snap.bs_positions[i], field.rects);
            if (hat_los) {
                // The analytic exclusion ball removes LoS interferers closer
                // than the serving distance.
                if (field.dist[i] >= r0_raw)
                    interference += sample_rician_power(f.rician_k, fade) * ch.k_l *
                                    std::pow(d_tilde, -ch.alpha_l);
            } else {
                interference += sample_rayleigh_power(f.mu_n_sens, fade) * ch.k_n *
                                std::pow(d_tilde, -ch.alpha_n);
            }
        } else {
            const double d_hat_raw = distance(serving_pos, snap.bs_positions[i]);
            const double d_hat = detail::clamp_link(d_hat_raw, snap.clamped_links);
            bool hat_los;
            if (sc.blockage_mode == BlockageMode::bernoulli)
                hat_los = hat.next_u01() < prob_los(d_hat_raw, sc.bernoulli);
            else
                hat_los = los_test(serving_pos, snap.bs_positions[i], field.rects);
            if (hat_los)
                interference += sample_rician_power(f.rician_k, fade) * ch.k_l *
                                std::pow(d_hat, -ch.alpha_l);
            else
                interference += sample_rayleigh_power(f.mu_n_sens, fade) * ch.k_n *
                                std::pow(d_hat, -ch.alpha_n);
        }
    }

    const double denom = interference + scaled_noise;
    snap.sinr = denom > 0.0 ? signal / denom : std::numeric_limits<double>::infinity();
    return snap;
}

}  // namespace detail

// One communication snapshot: typical UE at the origin, serving BS = nearest
// visible, Rician fading on LoS links and Rayleigh on NLoS. A snapshot with
// no visible BS is a coverage hole and carries no SINR.
inline Snapshot comm_snapshot(const Scenario& sc, const PathLossParams& ch,
                              const FadingParams& f, double scaled_noise,
                              std::uint64_t index) {
    sc.validate();
    return detail::comm_snapshot_on_field(detail::sample_field(sc, McTask::comm, index), sc,
                                          ch, f, scaled_noise, index);
}

// One sensing snapshot: typical target at the origin, serving BS = nearest
// visible, exponential RCS echo as the desired signal, and three interference
// families at the serving BS (LoS, NLoS, target reflection cascade).
//
// In matched geometry the direct interference distances are measured from the
// origin with the exclusion ball of the serving distance, mirroring the
// analytic integral; in exact geometry they are measured from the serving BS
// itself.
inline Snapshot sens_snapshot(const Scenario& sc, const PathLossParams& ch,
                              const FadingParams& f, double scaled_noise,
                              std::uint64_t index) {
    sc.validate();
    return detail::sens_snapshot_on_field(detail::sample_field(sc, McTask::sens, index), sc,
                                          ch, f, scaled_noise, index);
}

// Wilson 95% score interval for a binomial proportion.
inline Estimate wilson_estimate(std::uint64_t successes, std::uint64_t n) {
    constexpr double z = 1.959963984540054;
    const double nn = static_cast<double>(n);
    const double phat = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double centre = (phat + z2 / (2.0 * nn)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = std::min(phat, std::max(0.0, centre - half));
    const double hi = std::max(phat, std::min(1.0, centre + half));
    return {phat, lo, hi, n};
}

// Coverage estimates over a threshold grid. Each snapshot's SINR is computed
// once and compared against the whole grid (common random numbers), so the
// estimates are pathwise monotone in the threshold.
inline std::vector<Estimate> estimate_coverage(McTask task,
                                               const std::vector<double>& thresholds_db,
                                               const Scenario& sc, const PathLossParams& ch,
                                               const FadingParams& f, double scaled_noise,
                                               std::uint64_t n_snapshots) {
    if (n_snapshots < 100)
        throw std::invalid_argument("estimate_coverage: needs at least 100 snapshots");
    if (thresholds_db.empty())
        throw std::invalid_argument("estimate_coverage: threshold grid is empty");
    sc.validate();
    ch.validate();
    f.validate();

    std::vector<double> thresholds_linear(thresholds_db.size());
    for (std::size_t i = 0; i < thresholds_db.size(); ++i)
        thresholds_linear[i] = std::pow(10.0, thresholds_db[i] / 10.0);

    std::vector<std::uint64_t> covered(thresholds_db.size(), 0);
    for (std::uint64_t s = 0; s < n_snapshots; ++s) {
        const Snapshot snap = task == McTask::comm
                                  ? comm_snapshot(sc, ch, f, scaled_noise, s)
                                  : sens_snapshot(sc, ch, f, scaled_noise, s);
        if (!snap.sinr.has_value())
            continue;  // coverage hole: uncovered at every threshold
        for (std::size_t t = 0; t < thresholds_linear.size(); ++t)
            if (*snap.sinr > thresholds_linear[t])
                ++covered[t];
    }

    std::vector<Estimate> out(thresholds_db.size());
    for (std::size_t t = 0; t < thresholds_db.size(); ++t)
        out[t] = wilson_estimate(covered[t], n_snapshots);
    return out;
}

}  // namespace isaccov
