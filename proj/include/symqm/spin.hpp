#pragma once

#include "symqm/linalg.hpp"
#include "symqm/parallel.hpp"
#include "symqm/rng.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

/// Stern-Gerlach analyzer rotation by theta in the Z eigenbasis:
/// [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]].
/// Spinor double cover: sg_rotation(2 pi) = -I.
inline Eigen::Matrix2cd sg_rotation(double theta) {
    Eigen::Matrix2cd r;
    double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    r << Complex(c, 0.0), Complex(-s, 0.0), Complex(s, 0.0), Complex(c, 0.0);
    return r;
}

enum class Setting : int { z = 0, gamma = 1, delta = 2 };

inline double setting_angle(Setting s) {
    return 2.0 * std::numbers::pi / 3.0 * static_cast<int>(s);
}

inline std::string to_string(Setting s) {
    switch (s) {
        case Setting::z: return "Z";
        case Setting::gamma: return "Gamma";
        case Setting::delta: return "Delta";
    }
    throw std::logic_error("unreachable");
}

/// (|Z+,Z+> + |Z-,Z->)/sqrt(2) in the (++, +-, -+, --) product basis.
inline Eigen::Vector4cd epr_state() {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
    return psi;
}

/// X+ = (|Z+> + |Z->)/sqrt(2); global phase pinned to real positive entries.
inline Eigen::Vector2cd x_plus() {
    Eigen::Vector2cd v;
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

/// Joint outcome probabilities (++, +-, -+, --) when the two analyzers are
/// set to angles a and b: components of (R(a) tensor R(b))^dagger |psi|.
inline std::array<double, 4> joint_outcome_distribution(const Eigen::Vector4cd& state, double a,
                                                        double b) {
    CMatrix w = tensor(CMatrix(sg_rotation(a).adjoint()), CMatrix(sg_rotation(b).adjoint()));
    CVector amp = w * state;
    return {std::norm(amp(0)), std::norm(amp(1)), std::norm(amp(2)), std::norm(amp(3))};
}

/// P(both analyzers report the same sign). For the EPR state this equals
/// cos^2((a-b)/2); 1/4 at the 120-degree Mermin separations.
inline double joint_agreement_probability(const Eigen::Vector4cd& state, double a, double b) {
    auto p = joint_outcome_distribution(state, a, b);
    return p[0] + p[3];
}

/// Draw (s1, s2) with s = +1/-1. Zero-probability outcomes are never drawn,
/// so matched settings on the EPR state agree per-outcome, not just on average.
inline std::pair<int, int> sample_joint_outcome(const Eigen::Vector4cd& state, double a, double b,
                                                SeededRng& rng) {
    auto p = joint_outcome_distribution(state, a, b);
    std::size_t idx = sample_discrete({p[0], p[1], p[2], p[3]}, rng);
    int s1 = (idx < 2) ? 1 : -1;
    int s2 = (idx % 2 == 0) ? 1 : -1;
    return {s1, s2};
}

struct BellSample {
    Setting a;
    Setting b;
    int s1; // +1 or -1
    int s2;
};

enum class BellVerdict { violates_local_bound, consistent_with_local_bound, insufficient_data };

inline std::string to_string(BellVerdict v) {
    switch (v) {
        case BellVerdict::violates_local_bound: return "violates_local_bound";
        case BellVerdict::consistent_with_local_bound: return "consistent_with_local_bound";
        case BellVerdict::insufficient_data: return "insufficient_data";
    }
    throw std::logic_error("unreachable");
}

struct BellReport {
    std::size_t total = 0;
    std::size_t matched_n = 0, matched_agree = 0;
    std::size_t mismatched_n = 0, mismatched_agree = 0;
    double matched_rate = 0.0;
    double mismatched_rate = 0.0;
    std::optional<double> z_below_third; // z-score of mismatched rate under the 1/3 local bound
    BellVerdict verdict = BellVerdict::insufficient_data;
};

/// Agreement bookkeeping against the deterministic-local bound: any strategy
/// assigning fixed answers to the three settings agrees on mismatched pairs
/// with probability >= 1/3.
inline BellReport bell_audit(const std::vector<BellSample>& samples,
                             std::size_t min_significant = 30) {
    if (samples.empty()) throw std::invalid_argument("bell_audit: no samples");
    BellReport r;
    r.total = samples.size();
    for (const auto& s : samples) {
        bool agree = s.s1 == s.s2;
        if (s.a == s.b) {
            ++r.matched_n;
            r.matched_agree += agree;
        } else {
            ++r.mismatched_n;
            r.mismatched_agree += agree;
        }
    }
    if (r.matched_n > 0) r.matched_rate = double(r.matched_agree) / double(r.matched_n);
    if (r.mismatched_n > 0) r.mismatched_rate = double(r.mismatched_agree) / double(r.mismatched_n);
    if (r.mismatched_n >= min_significant) {
        double p = r.mismatched_rate;
        double sigma = std::sqrt(p * (1.0 - p) / double(r.mismatched_n));
        if (sigma > 0.0) {
            r.z_below_third = (1.0 / 3.0 - p) / sigma;
            r.verdict = (*r.z_below_third > 5.0) ? BellVerdict::violates_local_bound
                                                 : BellVerdict::consistent_with_local_bound;
        } else if (p == 0.0) {
            // all mismatched pairs disagreed; maximally below the bound
            r.verdict = BellVerdict::violates_local_bound;
        }
    }
    return r;
}

/// All 8 deterministic assignments of +1/-1 to the three settings.
inline std::vector<std::array<int, 3>> enumerate_local_strategies() {
    std::vector<std::array<int, 3>> out;
    for (int bits = 0; bits < 8; ++bits)
        out.push_back({bits & 1 ? 1 : -1, bits & 2 ? 1 : -1, bits & 4 ? 1 : -1});
    return out;
}

/// Exact mismatched-pair agreement count (out of 6 ordered pairs) for one
/// deterministic strategy shared by both particles.
inline int strategy_mismatched_agreements(const std::array<int, 3>& f) {
    int agree = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a != b && f[static_cast<std::size_t>(a)] == f[static_cast<std::size_t>(b)]) ++agree;
    return agree; // agreement rate = agree / 6, always >= 2/6 = 1/3
}

/// EPR audit run: uniform independent settings per side, one RNG substream
/// per trial. Samples come back in trial order for every thread count.
inline std::vector<BellSample> run_epr_trials(std::size_t trials, std::uint64_t seed,
                                              int threads = 1) {
    if (trials == 0) throw std::invalid_argument("run_epr_trials: need at least one trial");
    const Eigen::Vector4cd state = epr_state();
    std::vector<BellSample> samples(trials);
    SeededRng master(seed);
    parallel_chunks(trials, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            SeededRng rng = master.substream(t);
            BellSample& s = samples[t];
            s.a = static_cast<Setting>(rng.uniform_index(3));
            s.b = static_cast<Setting>(rng.uniform_index(3));
            auto [s1, s2] = sample_joint_outcome(state, setting_angle(s.a), setting_angle(s.b), rng);
            s.s1 = s1;
            s.s2 = s2;
        }
    });
    return samples;
}

} // namespace symqm
