#pragma once

#include "symqm/quadrature.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace symqm {

using Amplitude = std::complex<double>;

/// A chain of labelled endpoints with one complex amplitude per consecutive
/// pair. links.size() == endpoints.size() - 1 always.
struct RelationChain {
    std::vector<std::string> endpoints;
    std::vector<Amplitude> links;

    RelationChain(std::vector<std::string> eps, std::vector<Amplitude> ls)
        : endpoints(std::move(eps)), links(std::move(ls)) {
        if (endpoints.size() < 2)
            throw std::invalid_argument("RelationChain: need at least two endpoints");
        if (links.size() + 1 != endpoints.size())
            throw std::invalid_argument("RelationChain: links must pair consecutive endpoints");
    }

    /// Concatenate; this chain's tail endpoint must equal other's head.
    RelationChain joined(const RelationChain& other) const {
        if (endpoints.back() != other.endpoints.front())
            throw std::invalid_argument("RelationChain::joined: endpoint labels do not chain");
        std::vector<std::string> eps = endpoints;
        eps.insert(eps.end(), other.endpoints.begin() + 1, other.endpoints.end());
        std::vector<Amplitude> ls = links;
        ls.insert(ls.end(), other.links.begin(), other.links.end());
        return RelationChain(std::move(eps), std::move(ls));
    }
};

/// Left-to-right product of the chain's link amplitudes.
inline Amplitude compose(const RelationChain& chain) {
    if (chain.links.empty())
        throw std::invalid_argument("compose: empty chain");
    Amplitude acc{1.0, 0.0};
    for (const Amplitude& a : chain.links) acc *= a;
    return acc;
}

/// Phase average of |b e^{i theta} + b|^n over theta in [0, 2pi), composite
/// Simpson with the given interval count, split at the |.|^n kink (theta=pi).
inline double phase_average_lhs(double b, int n, int quadrature_points = 4096) {
    if (b < 0.0) throw std::invalid_argument("phase_average_lhs: modulus must be nonnegative");
    if (n < 1) throw std::invalid_argument("phase_average_lhs: exponent must be a positive integer");
    if (quadrature_points < 8)
        throw std::invalid_argument("phase_average_lhs: too few quadrature points");
    const double pi = std::numbers::pi;
    auto integrand = [b, n](double theta) {
        return std::pow(std::abs(b * std::exp(Amplitude(0.0, theta)) + b), n);
    };
    int half = quadrature_points / 2;
    double integral = simpson(integrand, 0.0, pi, half) + simpson(integrand, pi, 2.0 * pi, half);
    return integral / (2.0 * pi);
}

/// (2^n / 2pi) Int_0^pi |cos a|^n da - 1, adaptive quadrature split at the
/// kink (a = pi/2). Zero exactly when n = 2.
inline double eq8_residual(int n, double abs_tol = 1e-10) {
    if (n < 1) throw std::invalid_argument("eq8_residual: exponent must be a positive integer");
    const double pi = std::numbers::pi;
    auto integrand = [n](double a) { return std::pow(std::abs(std::cos(a)), n); };
    double integral = integrate_adaptive(integrand, 0.0, pi / 2.0, abs_tol / 2.0) +
                      integrate_adaptive(integrand, pi / 2.0, pi, abs_tol / 2.0);
    return std::pow(2.0, n) / (2.0 * pi) * integral - 1.0;
}

/// Exact rational, always kept reduced with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_zero() const { return num == 0; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// (2k)! / (2 (k!)^2) - 1 evaluated exactly. Equals C(2k,k)/2 - 1, so 64-bit
/// integers suffice on the supported range; k > 15 is rejected per contract.
inline Rational eq13_residual(int k) {
    if (k < 1) throw std::invalid_argument("eq13_residual: k must be a positive integer");
    if (k > 15) throw std::invalid_argument("eq13_residual: k > 15 not supported (exact range cap)");
    std::int64_t central = 1; // C(k+i, i) loop stays integral at every step
    for (std::int64_t i = 1; i <= k; ++i) central = central * (k + i) / i;
    return Rational(central - 2, 2);
}

struct ExponentScan {
    std::vector<std::pair<int, double>> rows; // (n, eq8 residual)
    bool unique_zero_at_two = false;
    double smallest_nonzero_magnitude = 0.0; // min |residual| over n != 2
};

/// Tabulate eq8_residual for n = 1..n_max and locate the unique vanishing
/// exponent. Residuals below 1e-8 count as zero.
inline ExponentScan exponent_scan(int n_max) {
    if (n_max < 2) throw std::invalid_argument("exponent_scan: n_max must be at least 2");
    ExponentScan scan;
    double min_off = -1.0;
    bool zero_at_two = false, zero_elsewhere = false;
    for (int n = 1; n <= n_max; ++n) {
        double r = eq8_residual(n);
        scan.rows.emplace_back(n, r);
        if (n == 2) {
            zero_at_two = std::abs(r) < 1e-8;
        } else {
            zero_elsewhere = zero_elsewhere || std::abs(r) < 1e-8;
            if (min_off < 0.0 || std::abs(r) < min_off) min_off = std::abs(r);
        }
    }
    scan.unique_zero_at_two = zero_at_two && !zero_elsewhere;
    scan.smallest_nonzero_magnitude = min_off;
    return scan;
}

} // namespace symqm
