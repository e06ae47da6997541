#include "symqm/mzi.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace symqm;
using Catch::Approx;

namespace {

constexpr double kRoot2Inv = 0.70710678118654752440;

Eigen::Vector4cd expected_amplitudes(Arm blocker) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (blocker) {
        case Arm::none:  v << 1.0, 0.0, 0.0, 0.0; break;
        case Arm::lower: v << 0.5, -0.5, kRoot2Inv, 0.0; break;
        case Arm::upper: v << 0.5, 0.5, 0.0, kRoot2Inv; break;
        case Arm::both:  v << 0.0, 0.0, kRoot2Inv, kRoot2Inv; break;
    }
    return v;
}

} // namespace

TEST_CASE("lattice irreps obey the dihedral relations") {
    const double k = 2.0;
    CMatrix ta = translation_irrep(k, 0.7), tb = translation_irrep(k, -1.3);
    CHECK(is_unitary(ta, 1e-14));
    CHECK((ta * tb - translation_irrep(k, 0.7 - 1.3)).cwiseAbs().maxCoeff() < 1e-14);

    CMatrix r = reflection_irrep(k, 0.4);
    CHECK(is_unitary(r, 1e-14));
    CHECK((r * r - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

    // reflecting, translating, reflecting again reverses the translation
    CHECK((r * ta * r - translation_irrep(k, -0.7)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("the beam splitter is the fixed half-silvered matrix at any wavenumber") {
    CMatrix expect(2, 2);
    expect << kRoot2Inv, -kRoot2Inv, kRoot2Inv, kRoot2Inv;
    for (double k : {0.5, 1.0, 7.0}) {
        CMatrix q = beamsplitter(k);
        CHECK((q - expect).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(is_unitary(q, 1e-13));
    }
}

TEST_CASE("click amplitudes for every blocker placement") {
    for (Arm blocker : {Arm::none, Arm::lower, Arm::upper, Arm::both}) {
        INFO("blocker = " << to_string(blocker));
        MziConfig cfg;
        cfg.blocker = blocker;
        ClickDistribution dist = run_mzi(cfg);
        CHECK((dist.amplitudes - expected_amplitudes(blocker)).cwiseAbs().maxCoeff() < 1e-12);

        double total = 0.0;
        for (int ch = 0; ch < 4; ++ch) total += std::norm(dist.amplitudes(ch));
        CHECK(total == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("the empty interferometer sends every photon to the bright port") {
    ClickDistribution dist = run_mzi(MziConfig{});
    CHECK(dist.probability(Channel::d1) == Catch::Approx(1.0).margin(1e-12));
    CHECK(dist.probability(Channel::d2) == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("dark port sign distinguishes the blocked arm") {
    MziConfig lower;
    lower.blocker = Arm::lower;
    MziConfig upper;
    upper.blocker = Arm::upper;
    Complex d2_lower = run_mzi(lower).amplitudes(static_cast<int>(Channel::d2));
    Complex d2_upper = run_mzi(upper).amplitudes(static_cast<int>(Channel::d2));
    CHECK(std::abs(d2_lower - Complex(-0.5, 0.0)) < 1e-12);
    CHECK(std::abs(d2_upper - Complex(0.5, 0.0)) < 1e-12);
}

TEST_CASE("removing either splitter yields which-way statistics") {
    MziConfig no_bs2;
    no_bs2.has_bs2 = false;
    ClickDistribution d = run_mzi(no_bs2);
    CHECK(d.probability(Channel::d1) == Catch::Approx(0.5).margin(1e-12));
    CHECK(d.probability(Channel::d2) == Catch::Approx(0.5).margin(1e-12));

    MziConfig no_bs1;
    no_bs1.has_bs1 = false;
    ClickDistribution e = run_mzi(no_bs1);
    CHECK(e.probability(Channel::d1) == Catch::Approx(0.5).margin(1e-12));
    CHECK(e.probability(Channel::d2) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("propagate accepts arbitrary source superpositions") {
    MziConfig cfg;
    Eigen::Vector2cd source(Complex(0.6, 0.0), Complex(0.0, 0.8));
    ClickDistribution dist = propagate(cfg, source);
    double total = 0.0;
    for (int ch = 0; ch < 4; ++ch) total += std::norm(dist.amplitudes(ch));
    CHECK(total == Catch::Approx(1.0).margin(1e-12));

    MziConfig degenerate;
    degenerate.k = 0.0;
    CHECK_THROWS_AS(propagate(degenerate, source), std::invalid_argument);
}

TEST_CASE("click table rows follow the configuration") {
    MziConfig open;
    CHECK(run_mzi(open).table().size() == 2);

    MziConfig one;
    one.blocker = Arm::lower;
    auto rows = run_mzi(one).table();
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].first == "absorbed");
    CHECK(rows[2].second == Catch::Approx(0.5).margin(1e-12));

    one.extra_detector = true;
    auto named = run_mzi(one).table();
    CHECK(named[2].first == "D3");

    MziConfig both;
    both.blocker = Arm::both;
    both.extra_detector = true;
    auto split = run_mzi(both).table();
    REQUIRE(split.size() == 4);
    CHECK(split[2].first == "D3_lower");
    CHECK(split[3].first == "D3_upper");
}

TEST_CASE("inference categories for each click") {
    MziConfig cfg;
    cfg.blocker = Arm::lower;
    ClickDistribution dist = run_mzi(cfg);

    IfmInference dark = ifm_inference(dist, Channel::d2);
    CHECK(dark.category == IfmCategory::ifm_positive);
    REQUIRE(dark.object_arm.has_value());
    CHECK(*dark.object_arm == Arm::lower);

    IfmInference bright = ifm_inference(dist, Channel::d1);
    CHECK(bright.category == IfmCategory::ambiguous);
    CHECK_FALSE(bright.object_arm.has_value());

    IfmInference touched = ifm_inference(dist, Channel::absorbed_lower);
    CHECK(touched.category == IfmCategory::interaction);
    CHECK(*touched.object_arm == Arm::lower);

    // a click that cannot happen in this layout is rejected
    CHECK_THROWS_AS(ifm_inference(dist, Channel::absorbed_upper), std::invalid_argument);

    ClickDistribution open = run_mzi(MziConfig{});
    CHECK(ifm_inference(open, Channel::d1).category == IfmCategory::uninformative);
}

TEST_CASE("channel and category names are stable strings") {
    CHECK(to_string(Channel::d1) == "D1");
    CHECK(to_string(Channel::d2) == "D2");
    CHECK(to_string(Channel::absorbed_lower) == "absorbed_lower");
    CHECK(to_string(Channel::absorbed_upper) == "absorbed_upper");
    CHECK(to_string(Arm::both) == "both");
    CHECK(to_string(IfmCategory::ifm_positive) == "ifm_positive");
}
