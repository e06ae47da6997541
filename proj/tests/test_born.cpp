#include "symqm/born.hpp"

#include "support/oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace symqm;
using Catch::Approx;

TEST_CASE("relation chains compose by amplitude multiplication") {
    RelationChain ab({"a", "b"}, {Amplitude(0.0, 1.0)});
    RelationChain bc({"b", "c"}, {Amplitude(0.0, 1.0)});
    RelationChain abc = ab.joined(bc);
    REQUIRE(abc.endpoints.size() == 3);
    REQUIRE(abc.links.size() == 2);
    CHECK(std::abs(compose(abc) - Amplitude(-1.0, 0.0)) < 1e-15);

    RelationChain cd({"c", "d"}, {Amplitude(0.5, 0.5)});
    CHECK(std::abs(compose(abc.joined(cd)) - Amplitude(-0.5, -0.5)) < 1e-15);

    CHECK_THROWS_AS(ab.joined(cd), std::invalid_argument);                 // labels do not chain
    CHECK_THROWS_AS(RelationChain({"a"}, {}), std::invalid_argument);      // too short
    CHECK_THROWS_AS(RelationChain({"a", "b"}, {}), std::invalid_argument); // missing link

    RelationChain gutted({"a", "b"}, {Amplitude(1, 0)});
    gutted.links.clear();
    CHECK_THROWS_AS(compose(gutted), std::invalid_argument);
}

TEST_CASE("phase averages of the doubled amplitude match closed forms") {
    // |b e^{i t} + b|^2 averages to 2 b^2, |.|^1 averages to 4b/pi
    for (double b : {0.5, 1.0, 2.0}) {
        CHECK(phase_average_lhs(b, 2) == Catch::Approx(2.0 * b * b).epsilon(1e-10));
        CHECK(phase_average_lhs(b, 1) == Catch::Approx(4.0 * b / std::numbers::pi).epsilon(1e-8));
    }
    CHECK_THROWS_AS(phase_average_lhs(-1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(phase_average_lhs(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(phase_average_lhs(1.0, 2, 4), std::invalid_argument);
}

TEST_CASE("quadrature residual agrees with the factorial closed form") {
    for (int n = 1; n <= 10; ++n) {
        INFO("n = " << n);
        CHECK(eq8_residual(n) ==
              Catch::Approx(oracles::uniform_phase_power_residual(n)).margin(1e-9));
    }
    CHECK(std::abs(eq8_residual(2)) < 1e-10);
    CHECK(eq8_residual(1) == Catch::Approx(2.0 / std::numbers::pi - 1.0).margin(1e-9));
    CHECK_THROWS_AS(eq8_residual(0), std::invalid_argument);
}

TEST_CASE("the squared exponent is the only vanishing residual") {
    ExponentScan scan = exponent_scan(8);
    REQUIRE(scan.rows.size() == 8);
    CHECK(scan.unique_zero_at_two);
    CHECK(scan.smallest_nonzero_magnitude ==
          Catch::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(1e-6));
    for (auto [n, r] : scan.rows) {
        if (n == 2)
            CHECK(std::abs(r) < 1e-9);
        else
            CHECK(std::abs(r) > 0.27);
    }
    CHECK_THROWS_AS(exponent_scan(1), std::invalid_argument);
}

TEST_CASE("rationals stay reduced with positive denominators") {
    Rational r(2, 4);
    CHECK(r.num == 1);
    CHECK(r.den == 2);
    Rational neg(3, -6);
    CHECK(neg.num == -1);
    CHECK(neg.den == 2);
    CHECK(Rational(0, 5).is_zero());
    CHECK(Rational(1, 3).value() == Catch::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("exact counting residuals vanish only at the first index") {
    const auto& table = oracles::half_central_binomial_minus_one();
    for (int k = 1; k <= 15; ++k) {
        Rational r = eq13_residual(k);
        CHECK(r.den == 1);
        CHECK(r.num == table[static_cast<std::size_t>(k - 1)]);
        CHECK(r.is_zero() == (k == 1));
    }
    CHECK_THROWS_AS(eq13_residual(0), std::invalid_argument);
    CHECK_THROWS_AS(eq13_residual(16), std::invalid_argument);
}

TEST_CASE("even-exponent quadrature equals the exact count") {
    // the integral route and the combinatorial route meet on even exponents:
    // eq8(2m) and eq13(m) measure the same residual
    for (int m = 1; m <= 4; ++m)
        CHECK(eq8_residual(2 * m) == Catch::Approx(eq13_residual(m).value()).margin(1e-9));
}
