#pragma once

#include "symqm/mzi.hpp"
#include "symqm/parallel.hpp"
#include "symqm/rng.hpp"
#include "symqm/spin.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

/// Atom-pair branch in the (Z1, Z2) product basis, index s1*2 + s2 with + = 0.
/// Box Z1+ sits in the lower interferometer arm, box Z2- in the upper arm, so
/// each branch fixes a blocker layout.
inline Arm branch_blocker(int branch) {
    switch (branch) {
        case 0: return Arm::lower; // Z1+, Z2+
        case 1: return Arm::both;  // Z1+, Z2-
        case 2: return Arm::none;  // Z1-, Z2+
        case 3: return Arm::upper; // Z1-, Z2-
    }
    throw std::invalid_argument("branch_blocker: branch out of range");
}

/// Entangled atom-pair + photon state of the boxed interferometer: each of
/// the four equal-amplitude X+ x X+ branches carries the photon amplitudes of
/// its blocker layout.
struct QleJointState {
    std::array<Complex, 4> branch_amp;                  // 1/2 each
    std::array<Eigen::Vector4cd, 4> photon;             // per-branch channel amplitudes

    /// Marginal click probabilities over (D1, D2, absorbed_lower, absorbed_upper).
    std::array<double, 4> channel_probabilities() const {
        std::array<double, 4> p{};
        for (int b = 0; b < 4; ++b)
            for (int ch = 0; ch < 4; ++ch)
                p[ch] += std::norm(branch_amp[b] * photon[b](ch));
        return p;
    }

    /// Atom-pair state conditioned on a click channel. The relabel flips the
    /// sign of |Z1+> branches; it is the fixed local basis convention under
    /// which the D2 state is the standard EPR pair.
    Eigen::Vector4cd conditional_spin_state(Channel channel, bool relabel = true) const {
        Eigen::Vector4cd amps;
        int ch = static_cast<int>(channel);
        for (int b = 0; b < 4; ++b) amps(b) = branch_amp[b] * photon[b](ch);
        double n2 = amps.squaredNorm();
        if (n2 <= 0.0)
            throw std::invalid_argument("conditional_spin_state: channel has zero probability");
        amps /= std::sqrt(n2);
        if (relabel) { amps(0) = -amps(0); amps(1) = -amps(1); }
        return amps;
    }
};

inline QleJointState build_joint_state(double k = 1.0) {
    QleJointState st;
    for (int b = 0; b < 4; ++b) {
        st.branch_amp[b] = Complex(0.5, 0.0);
        MziConfig cfg;
        cfg.k = k;
        cfg.blocker = branch_blocker(b);
        st.photon[b] = run_mzi(cfg).amplitudes;
    }
    return st;
}

struct PostselectedState {
    Eigen::Vector4cd raw;       // (|Z1-,Z2-> - |Z1+,Z2+>)/sqrt(2)
    Eigen::Vector4cd relabeled; // EPR form after |Z1+> -> -|Z1+>
};

inline PostselectedState postselect_d2(const QleJointState& state) {
    return {state.conditional_spin_state(Channel::d2, false),
            state.conditional_spin_state(Channel::d2, true)};
}

struct TrialRecord {
    std::size_t index = 0;
    bool prepared = true;
    Channel channel = Channel::d1;
    bool has_spin = false;
    Setting a = Setting::z, b = Setting::z;
    int s1 = 0, s2 = 0;
};

/// A control trial without box preparation: the interferometer is unblocked
/// and every photon reaches D1; there are no atoms to probe afterwards.
inline TrialRecord unprepared_trial(std::size_t index) {
    TrialRecord r;
    r.index = index;
    r.prepared = false;
    r.channel = Channel::d1;
    return r;
}

struct QleSummary {
    std::size_t trials = 0;
    std::array<std::size_t, 4> channel_counts{}; // D1, D2, absorbed_lower, absorbed_upper
    double d2_fraction = 0.0;
    BellReport bell;                    // over post-selected D2 spin outcomes
    std::size_t both_z_n = 0;           // D2 trials with both analyzers on Z
    bool both_z_all_agree = true;
    double overall_agreement = 0.0;     // matched and mismatched D2 trials pooled
};

struct QleRun {
    std::vector<TrialRecord> records;
    QleSummary summary;
};

/// Monte Carlo over prepared trials with one RNG substream per trial index.
/// Absorbed-channel trials are kept as records only in audit mode, which also
/// probes the atoms after every click channel instead of only after D2.
inline QleRun run_experiment(std::size_t trials, std::uint64_t seed, bool audit_mode = false,
                             int threads = 1) {
    if (trials == 0) throw std::invalid_argument("run_experiment: need at least one trial");
    const QleJointState joint = build_joint_state();
    const std::array<double, 4> channel_p = joint.channel_probabilities();
    const std::vector<double> weights(channel_p.begin(), channel_p.end());

    // Conditional sampling states, fixed relabel convention everywhere.
    std::array<Eigen::Vector4cd, 4> conditional;
    for (int ch = 0; ch < 4; ++ch)
        conditional[ch] = joint.conditional_spin_state(static_cast<Channel>(ch));

    std::vector<TrialRecord> all(trials);
    SeededRng master(seed);
    parallel_chunks(trials, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            SeededRng rng = master.substream(t);
            TrialRecord rec;
            rec.index = t;
            rec.channel = static_cast<Channel>(sample_discrete(weights, rng));
            if (rec.channel == Channel::d2 || audit_mode) {
                rec.has_spin = true;
                rec.a = static_cast<Setting>(rng.uniform_index(3));
                rec.b = static_cast<Setting>(rng.uniform_index(3));
                auto [s1, s2] = sample_joint_outcome(conditional[static_cast<int>(rec.channel)],
                                                     setting_angle(rec.a), setting_angle(rec.b), rng);
                rec.s1 = s1;
                rec.s2 = s2;
            }
            all[t] = rec;
        }
    });

    QleRun run;
    run.summary.trials = trials;
    std::vector<BellSample> d2_samples;
    std::size_t d2_agree = 0;
    for (const TrialRecord& rec : all) {
        ++run.summary.channel_counts[static_cast<int>(rec.channel)];
        bool absorbed = rec.channel == Channel::absorbed_lower || rec.channel == Channel::absorbed_upper;
        if (!absorbed || audit_mode) run.records.push_back(rec);
        if (rec.channel == Channel::d2 && rec.has_spin) {
            d2_samples.push_back({rec.a, rec.b, rec.s1, rec.s2});
            d2_agree += rec.s1 == rec.s2;
            if (rec.a == Setting::z && rec.b == Setting::z) {
                ++run.summary.both_z_n;
                if (rec.s1 != rec.s2) run.summary.both_z_all_agree = false;
            }
        }
    }
    run.summary.d2_fraction = double(run.summary.channel_counts[1]) / double(trials);
    if (!d2_samples.empty()) {
        run.summary.bell = bell_audit(d2_samples);
        run.summary.overall_agreement = double(d2_agree) / double(d2_samples.size());
    }
    return run;
}

/// Phase-2 layout fact induced by a phase-3 Z outcome: the occupied boxes and
/// which of them sat inside an interferometer arm as the silent detector.
struct Phase2Inference {
    std::string blocking_box;  // "Z1+" (lower arm) or "Z2-" (upper arm)
    Arm blocked_arm;
    std::array<std::string, 2> occupied_boxes;
};

/// Inference for one D2 record. Requires at least one analyzer on Z; a lone Z
/// outcome fixes its partner through the perfect Z correlation.
inline std::optional<Phase2Inference> infer_phase2(const TrialRecord& rec) {
    if (!rec.prepared || rec.channel != Channel::d2 || !rec.has_spin) return std::nullopt;
    std::optional<int> z_outcome;
    if (rec.a == Setting::z) z_outcome = rec.s1;
    if (rec.b == Setting::z) {
        if (z_outcome && *z_outcome != rec.s2) return std::nullopt; // inconsistent pair, no fact
        z_outcome = rec.s2;
    }
    if (!z_outcome) return std::nullopt;
    if (*z_outcome > 0) return Phase2Inference{"Z1+", Arm::lower, {"Z1+", "Z2+"}};
    return Phase2Inference{"Z2-", Arm::upper, {"Z1-", "Z2-"}};
}

struct DelayedChoiceReport {
    std::size_t d2_total = 0;
    std::size_t determined_lower = 0;  // Z outcome +: Z1+ box was the in-arm detector
    std::size_t determined_upper = 0;  // Z outcome -: Z2- box was the in-arm detector
    std::size_t undetermined = 0;      // no Z analyzer among the pair: no layout fact
    std::size_t both_z = 0;
    bool both_z_consistent = true;     // matched-Z pairs always agree
    std::size_t unprepared_d1 = 0;     // control trials: boxes never became detectors
    std::size_t prepared_without_probe = 0; // D1/absorbed trials carrying no phase-3 data
    std::optional<BellReport> bell;    // mismatched-setting statistics of the D2 set
};

inline DelayedChoiceReport delayed_choice_report(const std::vector<TrialRecord>& records) {
    DelayedChoiceReport rep;
    std::vector<BellSample> d2_samples;
    for (const TrialRecord& rec : records) {
        if (!rec.prepared) {
            ++rep.unprepared_d1;
            continue;
        }
        if (rec.channel != Channel::d2 || !rec.has_spin) {
            ++rep.prepared_without_probe;
            continue;
        }
        ++rep.d2_total;
        d2_samples.push_back({rec.a, rec.b, rec.s1, rec.s2});
        if (rec.a == Setting::z && rec.b == Setting::z) {
            ++rep.both_z;
            if (rec.s1 != rec.s2) rep.both_z_consistent = false;
        }
        if (auto inf = infer_phase2(rec)) {
            if (inf->blocked_arm == Arm::lower) ++rep.determined_lower;
            else ++rep.determined_upper;
        } else {
            ++rep.undetermined;
        }
    }
    if (!d2_samples.empty()) rep.bell = bell_audit(d2_samples);
    return rep;
}

} // namespace symqm
