#pragma once

#include "symqm/parallel.hpp"
#include "symqm/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace symqm {

using Point2 = std::array<double, 2>; // (x, y); slit screen at y = 0, detector surface at y = depth

/// Two slits on the y = 0 screen at x = +-d/2, detector surface at y = depth.
/// Region B is the box between them: |x| <= surface_half_extent, 0 < y <= depth.
struct SlitGeometry {
    double slit_separation = 1.0;                       // d; 0 collapses to one slit
    double wavenumber = 20.0 * std::numbers::pi;        // k, so k*d = 20*pi by default
    double depth = 50.0;                                // L
    double surface_half_extent = 25.0;                  // surface covers [-L/2, L/2]
    int surface_bins = 256;

    void validate() const {
        if (!(slit_separation >= 0.0))
            throw std::invalid_argument("SlitGeometry: slit separation must be >= 0");
        if (!(wavenumber > 0.0)) throw std::invalid_argument("SlitGeometry: wavenumber must be > 0");
        if (!(depth > 0.0)) throw std::invalid_argument("SlitGeometry: depth must be > 0");
        if (!(surface_half_extent > 0.0))
            throw std::invalid_argument("SlitGeometry: surface extent must be > 0");
        if (surface_bins < 2) throw std::invalid_argument("SlitGeometry: need at least 2 bins");
    }

    Point2 slit(int family) const {
        if (family != 1 && family != 2)
            throw std::invalid_argument("SlitGeometry: family must be 1 or 2");
        double sx = (family == 1 ? -0.5 : 0.5) * slit_separation;
        return {sx, 0.0};
    }

    bool in_region_b(Point2 p) const {
        return std::abs(p[0]) <= surface_half_extent && p[1] > 0.0 && p[1] <= depth;
    }
};

/// Unnormalized |psi|^2 of two cylindrical Huygens waves e^{ikr}/sqrt(r) from
/// the slits. Throws outside region B or at a slit mouth (r = 0).
inline double wave_intensity(const SlitGeometry& geom, Point2 p) {
    if (!geom.in_region_b(p))
        throw std::invalid_argument("wave_intensity: point outside region B");
    std::complex<double> psi = 0.0;
    for (int family : {1, 2}) {
        Point2 s = geom.slit(family);
        double r = std::hypot(p[0] - s[0], p[1] - s[1]);
        if (r == 0.0) throw std::invalid_argument("wave_intensity: point coincides with a slit");
        psi += std::polar(1.0 / std::sqrt(r), geom.wavenumber * r);
    }
    return std::norm(psi);
}

/// Midpoint-rule integral of the raw intensity over region B. Deterministic
/// in (geom, nx, ny); results are memoized because the density is queried far
/// more often than geometries change.
inline double normalization_constant(const SlitGeometry& geom, int nx = 1024, int ny = 1024) {
    geom.validate();
    using Key = std::tuple<double, double, double, double, int, int>;
    static std::map<Key, double> cache;
    static std::mutex mutex;
    Key key{geom.slit_separation, geom.wavenumber, geom.depth, geom.surface_half_extent, nx, ny};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double dx = 2.0 * geom.surface_half_extent / nx, dy = geom.depth / ny;
    double sum = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        double y = (iy + 0.5) * dy;
        for (int ix = 0; ix < nx; ++ix)
            sum += wave_intensity(geom, {-geom.surface_half_extent + (ix + 0.5) * dx, y});
    }
    double z = sum * dx * dy;
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, z);
    return z;
}

/// First-event probability density at a point, normalized over region B.
inline double single_event_density(const SlitGeometry& geom, Point2 p, double norm) {
    if (!(norm > 0.0)) throw std::invalid_argument("single_event_density: norm must be > 0");
    return wave_intensity(geom, p) / norm;
}

inline double single_event_density(const SlitGeometry& geom, Point2 p) {
    return single_event_density(geom, p, normalization_constant(geom));
}

/// Inverse-CDF sampler over a fixed grid discretization of |psi|^2 on region
/// B: cell weights at cell centers, uniform placement within the drawn cell.
/// The grid (not the continuum density) is the sampling contract; oracles for
/// grid-level statements must discretize the same way.
class FirstEventSampler {
public:
    explicit FirstEventSampler(const SlitGeometry& geom, int nx = 2048, int ny = 2048)
        : geom_(geom), nx_(nx), ny_(ny) {
        geom.validate();
        if (nx < 2 || ny < 2) throw std::invalid_argument("FirstEventSampler: grid too small");
        dx_ = 2.0 * geom.surface_half_extent / nx;
        dy_ = geom.depth / ny;
        cdf_.resize(static_cast<std::size_t>(nx) * ny);
        double run = 0.0;
        for (int iy = 0; iy < ny; ++iy) {
            double y = (iy + 0.5) * dy_;
            for (int ix = 0; ix < nx; ++ix) {
                run += wave_intensity(geom, {cell_x(ix + 0.5), y}) * dx_ * dy_;
                cdf_[static_cast<std::size_t>(iy) * nx + ix] = run;
            }
        }
        if (!(run > 0.0)) throw std::runtime_error("FirstEventSampler: density vanishes on grid");
    }

    const SlitGeometry& geometry() const { return geom_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    double dx() const { return dx_; }
    double dy() const { return dy_; }
    double cell_x(double ix) const { return -geom_.surface_half_extent + ix * dx_; }
    double cell_y(double iy) const { return iy * dy_; }
    /// Grid estimate of the region-B normalization integral.
    double total_weight() const { return cdf_.back(); }

    /// Three uniform draws per event: cell via inverse CDF, then in-cell
    /// offsets. The y offset uses 1 - u in (0, 1] so events stay strictly
    /// inside region B even in the bottom cell row.
    Point2 sample(SeededRng& rng) const {
        double u = rng.uniform() * cdf_.back();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        std::size_t idx = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
        double ux = rng.uniform(), uy = 1.0 - rng.uniform();
        int ix = static_cast<int>(idx % nx_), iy = static_cast<int>(idx / nx_);
        return {cell_x(ix + ux), cell_y(iy + uy)};
    }

private:
    SlitGeometry geom_;
    int nx_, ny_;
    double dx_, dy_;
    std::vector<double> cdf_;
};

inline Point2 sample_first_event(const FirstEventSampler& sampler, SeededRng& rng) {
    return sampler.sample(rng);
}

/// Nearest-slit family assignment; exact tie (bisector) goes to slit 1.
inline int assign_family(const SlitGeometry& geom, Point2 first_event) {
    if (!geom.in_region_b(first_event))
        throw std::invalid_argument("assign_family: first event outside region B");
    Point2 s1 = geom.slit(1), s2 = geom.slit(2);
    double d1 = std::hypot(first_event[0] - s1[0], first_event[1] - s1[1]);
    double d2 = std::hypot(first_event[0] - s2[0], first_event[1] - s2[1]);
    return d1 <= d2 ? 1 : 2;
}

/// All events of one trial: the sampled first event, then stations along the
/// straight line from the family's slit through it, ending on the detector
/// surface. Every non-first event is collinear with slit and first event by
/// construction.
struct EventSequence {
    int family = 1;
    std::vector<Point2> events; // first event ... terminal, inclusive
    Point2 terminal{0.0, 0.0};  // on y = depth; x may exceed the recorded surface
    bool escaped = false;       // terminal misses the recorded surface extent
};

/// Terminal x of the straight line from the family's slit through the first
/// event, continued to the detector surface.
inline double terminal_x(const SlitGeometry& geom, Point2 first_event, int family) {
    Point2 s = geom.slit(family);
    if (!(first_event[1] > 0.0))
        throw std::invalid_argument("terminal_x: line parallel to the surface never reaches it");
    return s[0] + (first_event[0] - s[0]) * (geom.depth / first_event[1]);
}

/// step <= 0 picks depth/8. Station count does not affect the terminal point.
inline EventSequence extend_trajectory(const SlitGeometry& geom, Point2 first_event, int family,
                                       double step = 0.0) {
    if (!geom.in_region_b(first_event))
        throw std::invalid_argument("extend_trajectory: first event outside region B");
    EventSequence seq;
    seq.family = family;
    seq.terminal = {terminal_x(geom, first_event, family), geom.depth};
    seq.escaped = std::abs(seq.terminal[0]) > geom.surface_half_extent;
    if (step <= 0.0) step = geom.depth / 8.0;
    double len = std::hypot(seq.terminal[0] - first_event[0], seq.terminal[1] - first_event[1]);
    seq.events.push_back(first_event);
    for (double arc = step; arc < len; arc += step) {
        double f = arc / len;
        seq.events.push_back({first_event[0] + f * (seq.terminal[0] - first_event[0]),
                              first_event[1] + f * (seq.terminal[1] - first_event[1])});
    }
    if (len > 0.0) seq.events.push_back(seq.terminal);
    return seq;
}

/// Depth classification of a first event. Region A (at or before the slit
/// screen) is excluded from region-B statistics; with a threshold above 1/2
/// the bands would overlap and the near-slit test wins (checked first).
enum class DepthRegion { region_a, near_slit, middle, near_surface };

inline DepthRegion classify_depth(const SlitGeometry& geom, double depth_threshold, Point2 p) {
    if (!(depth_threshold > 0.0 && depth_threshold < 1.0))
        throw std::invalid_argument("classify_depth: threshold must be in (0,1)");
    if (p[1] <= 0.0) return DepthRegion::region_a;
    if (p[1] < depth_threshold * geom.depth) return DepthRegion::near_slit;
    if (p[1] > (1.0 - depth_threshold) * geom.depth) return DepthRegion::near_surface;
    return DepthRegion::middle;
}

/// Fixed-width histogram over [lo, hi]; values outside are rejected by add().
struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t recorded = 0;

    Histogram() = default;
    Histogram(double lo_, double hi_, int bins) : lo(lo_), hi(hi_), counts(bins, 0) {
        if (!(hi_ > lo_) || bins < 1) throw std::invalid_argument("Histogram: bad range or bins");
    }

    bool add(double x) {
        if (!(x >= lo && x <= hi)) return false;
        auto bin = static_cast<std::size_t>((x - lo) / (hi - lo) * counts.size());
        if (bin >= counts.size()) bin = counts.size() - 1; // x == hi
        ++counts[bin];
        ++recorded;
        return true;
    }

    double bin_width() const { return (hi - lo) / counts.size(); }
    double bin_center(std::size_t i) const { return lo + (i + 0.5) * bin_width(); }

    /// (I_max - I_min)/(I_max + I_min) over bins whose centers fall in
    /// [window_lo, window_hi]. The window exists to measure fringe contrast
    /// where the envelope is appreciable instead of its vanishing tails.
    double visibility(double window_lo, double window_hi) const {
        std::uint64_t max_c = 0, min_c = UINT64_MAX;
        bool any = false;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            double c = bin_center(i);
            if (c < window_lo || c > window_hi) continue;
            any = true;
            max_c = std::max(max_c, counts[i]);
            min_c = std::min(min_c, counts[i]);
        }
        if (!any || max_c + min_c == 0) return 0.0;
        return static_cast<double>(max_c - min_c) / static_cast<double>(max_c + min_c);
    }
};

/// One depth band of the transition experiment. trials = escaped + recorded;
/// the histogram and terminal list hold exactly the recorded ones.
struct TransitionPartition {
    std::uint64_t trials = 0;
    std::uint64_t escaped = 0;
    Histogram histogram;
    std::vector<double> terminals; // recorded terminal x, in trial order
    bool present = false;
    double visibility = 0.0;
    std::string warning; // set when the partition is empty and the histogram is omitted
};

struct TransitionReport {
    SlitGeometry geometry;
    double depth_threshold = 0.2;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t region_a_excluded = 0;
    std::uint64_t middle_band = 0;
    TransitionPartition near_slit;
    TransitionPartition near_surface;
    bool both_present = false;
    double visibility_gap = 0.0; // near_surface minus near_slit, when both present
};

/// First-event partitioning experiment: every trial samples a first event,
/// rides the family line to the surface, and lands in the terminal histogram
/// of its depth band. Fringe contrast is read off the central half of the
/// surface. Per-trial substreams and shard-ordered merges keep the report
/// identical for every thread count.
inline TransitionReport transition_experiment(const FirstEventSampler& sampler, std::size_t trials,
                                              double depth_threshold, std::uint64_t seed,
                                              int threads = 1) {
    if (trials == 0) throw std::invalid_argument("transition_experiment: need at least one trial");
    if (!(depth_threshold > 0.0 && depth_threshold < 1.0))
        throw std::invalid_argument("transition_experiment: threshold must be in (0,1)");
    const SlitGeometry& geom = sampler.geometry();

    TransitionReport rep;
    rep.geometry = geom;
    rep.depth_threshold = depth_threshold;
    rep.trials = trials;
    rep.seed = seed;

    struct Partial {
        std::uint64_t region_a = 0, middle = 0;
        std::array<std::uint64_t, 2> band_trials{}, band_escaped{}; // 0 near_slit, 1 near_surface
        std::array<std::vector<double>, 2> terminals;
    };
    std::vector<Partial> partials(shard_count(trials, threads));

    SeededRng master(seed);
    parallel_chunks_indexed(trials, threads,
                            [&](std::size_t shard, std::size_t begin, std::size_t end) {
        Partial& part = partials[shard];
        for (std::size_t t = begin; t < end; ++t) {
            SeededRng rng = master.substream(t);
            Point2 p = sampler.sample(rng);
            DepthRegion region = classify_depth(geom, depth_threshold, p);
            if (region == DepthRegion::region_a) { ++part.region_a; continue; }
            if (region == DepthRegion::middle) { ++part.middle; continue; }
            int band = region == DepthRegion::near_slit ? 0 : 1;
            ++part.band_trials[band];
            double xt = terminal_x(geom, p, assign_family(geom, p));
            if (std::abs(xt) > geom.surface_half_extent) ++part.band_escaped[band];
            else part.terminals[band].push_back(xt);
        }
    });

    TransitionPartition* bands[2] = {&rep.near_slit, &rep.near_surface};
    for (int b = 0; b < 2; ++b)
        bands[b]->histogram =
            Histogram(-geom.surface_half_extent, geom.surface_half_extent, geom.surface_bins);
    for (const Partial& part : partials) {
        rep.region_a_excluded += part.region_a;
        rep.middle_band += part.middle;
        for (int b = 0; b < 2; ++b) {
            bands[b]->trials += part.band_trials[b];
            bands[b]->escaped += part.band_escaped[b];
            for (double xt : part.terminals[b]) {
                bands[b]->terminals.push_back(xt);
                bands[b]->histogram.add(xt);
            }
        }
    }
    double window = 0.5 * geom.surface_half_extent;
    for (int b = 0; b < 2; ++b) {
        TransitionPartition& band = *bands[b];
        band.present = band.histogram.recorded > 0;
        if (band.present) {
            band.visibility = band.histogram.visibility(-window, window);
        } else {
            band.warning = "empty partition: histogram omitted";
        }
    }
    rep.both_present = rep.near_slit.present && rep.near_surface.present;
    if (rep.both_present)
        rep.visibility_gap = rep.near_surface.visibility - rep.near_slit.visibility;
    return rep;
}

inline TransitionReport transition_experiment(const SlitGeometry& geom, std::size_t trials,
                                              double depth_threshold, std::uint64_t seed,
                                              int threads = 1, int grid_n = 2048) {
    FirstEventSampler sampler(geom, grid_n, grid_n);
    return transition_experiment(sampler, trials, depth_threshold, seed, threads);
}

} // namespace symqm
