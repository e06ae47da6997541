#pragma once

#include "symqm/linalg.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

/// Lattice translation by a in the two-beam basis: diag(e^{-ika}, e^{ika}).
inline CMatrix translation_irrep(double k, double a) {
    CMatrix t = CMatrix::Zero(2, 2);
    t(0, 0) = std::exp(Complex(0.0, -k * a));
    t(1, 1) = std::exp(Complex(0.0, k * a));
    return t;
}

/// Point reflection about a: off-diagonal phases e^{-2ika}, e^{2ika}.
inline CMatrix reflection_irrep(double k, double a) {
    CMatrix s = CMatrix::Zero(2, 2);
    s(0, 1) = std::exp(Complex(0.0, -2.0 * k * a));
    s(1, 0) = std::exp(Complex(0.0, 2.0 * k * a));
    return s;
}

/// Symmetric beam splitter Q(a0) = (I - i S(a0)) / sqrt(2) at the quarter-wave
/// point a0 = pi/(4k); reduces to [[1,-1],[1,1]]/sqrt(2).
inline CMatrix beamsplitter(double k) {
    if (k == 0.0) throw std::invalid_argument("beamsplitter: wavenumber must be nonzero");
    const double a0 = std::numbers::pi / (4.0 * k);
    CMatrix q = (CMatrix::Identity(2, 2) - kI * reflection_irrep(k, a0)) / std::sqrt(2.0);
    return q;
}

enum class Arm { none, lower, upper, both };

enum class Channel : int { d1 = 0, d2 = 1, absorbed_lower = 2, absorbed_upper = 3 };

inline std::string to_string(Arm a) {
    switch (a) {
        case Arm::none: return "none";
        case Arm::lower: return "lower";
        case Arm::upper: return "upper";
        case Arm::both: return "both";
    }
    throw std::logic_error("unreachable");
}

inline std::string to_string(Channel c) {
    switch (c) {
        case Channel::d1: return "D1";
        case Channel::d2: return "D2";
        case Channel::absorbed_lower: return "absorbed_lower";
        case Channel::absorbed_upper: return "absorbed_upper";
    }
    throw std::logic_error("unreachable");
}

struct MziConfig {
    double k = 1.0;            // beam wavenumber
    bool has_bs1 = true;
    bool has_bs2 = true;
    Arm blocker = Arm::none;
    bool extra_detector = false; // an in-arm detector D3 reads the absorbed channel
};

/// Output channel amplitudes (D1, D2, absorbed-in-lower-arm, absorbed-in-
/// upper-arm). The two absorbed slots are orthogonal outcomes: an absorption
/// localizes the photon in one arm.
struct ClickDistribution {
    MziConfig config;
    Eigen::Vector4cd amplitudes;

    double probability(Channel c) const { return std::norm(amplitudes(static_cast<int>(c))); }

    std::vector<std::pair<std::string, double>> table() const {
        std::vector<std::pair<std::string, double>> rows = {
            {"D1", probability(Channel::d1)}, {"D2", probability(Channel::d2)}};
        double lower = probability(Channel::absorbed_lower);
        double upper = probability(Channel::absorbed_upper);
        if (config.blocker != Arm::none) {
            std::string label = config.extra_detector ? "D3" : "absorbed";
            if (config.blocker == Arm::both) {
                rows.emplace_back(label + "_lower", lower);
                rows.emplace_back(label + "_upper", upper);
            } else {
                rows.emplace_back(label, lower + upper);
            }
        }
        return rows;
    }
};

/// Propagate an arbitrary source state through the interferometer. Beam
/// component 1 travels the upper arm after the first splitter, component 2
/// the lower arm; mirrors act as the identity on the translation eigenstates.
inline ClickDistribution propagate(const MziConfig& config, const Eigen::Vector2cd& source) {
    if (config.k == 0.0) throw std::invalid_argument("propagate: wavenumber must be nonzero");
    Eigen::Vector2cd s = source;
    if (config.has_bs1) s = beamsplitter(config.k) * s;

    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (config.blocker) {
        case Arm::none:
            v(0) = s(0); v(1) = s(1);
            break;
        case Arm::lower: // lower-arm amplitude is absorbed there
            v(0) = s(0); v(2) = s(1);
            break;
        case Arm::upper:
            v(1) = s(1); v(3) = s(0);
            break;
        case Arm::both:
            v(2) = s(1); v(3) = s(0);
            break;
    }
    if (config.has_bs2) {
        Eigen::Matrix2cd qdag = beamsplitter(config.k).adjoint();
        Eigen::Vector2cd beams(v(0), v(1));
        beams = qdag * beams;
        v(0) = beams(0); v(1) = beams(1);
    }
    return ClickDistribution{config, v};
}

inline ClickDistribution run_mzi(const MziConfig& config) {
    Eigen::Vector2cd source;
    source << Complex(1.0, 0.0), Complex(0.0, 0.0);
    return propagate(config, source);
}

enum class IfmCategory {
    ifm_positive,   // click only possible with the object present: located without interaction
    ambiguous,      // click occurs with and without the object
    interaction,    // photon absorbed: located by interaction
    uninformative   // no object in any arm, nothing to infer
};

inline std::string to_string(IfmCategory c) {
    switch (c) {
        case IfmCategory::ifm_positive: return "ifm_positive";
        case IfmCategory::ambiguous: return "ambiguous";
        case IfmCategory::interaction: return "interaction";
        case IfmCategory::uninformative: return "uninformative";
    }
    throw std::logic_error("unreachable");
}

struct IfmInference {
    Channel click;
    IfmCategory category;
    std::optional<Arm> object_arm;
    std::string note;
};

/// Classify a click against the unblocked reference interferometer.
inline IfmInference ifm_inference(const ClickDistribution& dist, Channel click) {
    if (dist.probability(click) <= 0.0)
        throw std::invalid_argument("ifm_inference: click has zero probability in this configuration");
    const Arm blocker = dist.config.blocker;
    if (blocker == Arm::none)
        return {click, IfmCategory::uninformative, std::nullopt, "no object present"};

    MziConfig open = dist.config;
    open.blocker = Arm::none;
    ClickDistribution reference = propagate(open, Eigen::Vector2cd(Complex(1.0, 0.0), Complex(0.0, 0.0)));

    if (click == Channel::absorbed_lower || click == Channel::absorbed_upper) {
        Arm arm = (click == Channel::absorbed_lower) ? Arm::lower : Arm::upper;
        return {click, IfmCategory::interaction, arm, "object located by absorbing the photon"};
    }
    if (reference.probability(click) <= 1e-12) {
        // Dark-port click: only the blocked geometry produces it.
        return {click, IfmCategory::ifm_positive, blocker,
                "object acted as a silent detector; photon never entered its arm"};
    }
    return {click, IfmCategory::ambiguous, std::nullopt,
            "click occurs in both blocked and unblocked runs"};
}

} // namespace symqm
