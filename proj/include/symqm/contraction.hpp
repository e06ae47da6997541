#pragma once

#include "symqm/linalg.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

// ============================================================================
// Finite-c kinematic algebra on the affine coordinates (t, x, y, z, 1).
// ============================================================================

/// Rotation, boost and translation generators at a finite speed parameter c,
/// in the convention generator = i * (real one-parameter-subgroup derivative).
/// In this convention the nonvanishing brackets are, with (m,n,k) cyclic:
///   [J_m,J_n] = i J_k        [J_m,K_n] = i K_k       [J_m,T_n] = i T_k
///   [K_m,K_n] = (-i/c^2) J_k [T_0,K_n] = i T_n       [T_m,K_n] = (i/c^2) d_mn T_0
/// and every bracket involving M = mass*I vanishes. Boosts commute in the
/// c -> infinity limit while [T_m,K_n] collapses onto the central direction.
struct LieAlgebraRep {
    double c = 1.0;
    double hbar = 1.0;
    double mass = 1.0;
    std::map<std::string, CMatrix> generators;

    const CMatrix& gen(const std::string& name) const {
        auto it = generators.find(name);
        if (it == generators.end())
            throw std::invalid_argument("LieAlgebraRep: unknown generator " + name);
        return it->second;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& kv : generators) out.push_back(kv.first);
        return out;
    }
};

inline LieAlgebraRep build_poincare_rep(double c, double hbar = 1.0, double mass = 1.0) {
    if (c <= 0.0) throw std::invalid_argument("build_poincare_rep: c must be positive");
    if (hbar <= 0.0) throw std::invalid_argument("build_poincare_rep: hbar must be positive");
    LieAlgebraRep rep;
    rep.c = c;
    rep.hbar = hbar;
    rep.mass = mass;

    auto zero = [] { return CMatrix::Zero(5, 5).eval(); };
    // coordinates: 0 = t, 1..3 = x,y,z, 4 = affine slot
    for (int m = 1; m <= 3; ++m) {
        int a = m % 3 + 1, b = (m + 1) % 3 + 1; // the two axes rotated by J_m
        CMatrix r = zero();
        r(a, b) = -1.0;
        r(b, a) = 1.0;
        rep.generators["J" + std::to_string(m)] = kI * r;

        CMatrix bo = zero();
        bo(0, m) = -1.0 / (c * c);
        bo(m, 0) = -1.0;
        rep.generators["K" + std::to_string(m)] = kI * bo;

        CMatrix tr = zero();
        tr(m, 4) = 1.0;
        rep.generators["T" + std::to_string(m)] = kI * tr;
    }
    CMatrix t0 = zero();
    t0(0, 4) = 1.0;
    rep.generators["T0"] = kI * t0;
    rep.generators["M"] = mass * CMatrix::Identity(5, 5);
    return rep;
}

inline CMatrix bracket(const LieAlgebraRep& rep, const std::string& a, const std::string& b) {
    return commutator(rep.gen(a), rep.gen(b));
}

namespace detail {

inline int levi_civita(int m, int n, int k) {
    if (m == n || n == k || m == k) return 0;
    return ((n - m + 3) % 3 == 1) ? 1 : -1; // cyclic (m,n,k) of {1,2,3}
}

inline int third_axis(int m, int n) { return 6 - m - n; }

} // namespace detail

/// Expected value of [A, B] from the structure-constant table above.
inline CMatrix expected_bracket(const LieAlgebraRep& rep, const std::string& a,
                                const std::string& b) {
    if (a == b) return CMatrix::Zero(5, 5);
    if (b < a) return (-expected_bracket(rep, b, a)).eval(); // antisymmetry, canonical order
    const double c2 = rep.c * rep.c;
    auto axis = [](const std::string& s) { return s[1] - '0'; };
    char fa = a[0], fb = b[0];
    if (a == "M" || b == "M") return CMatrix::Zero(5, 5);
    if (fa == 'J' && fb == 'J') {
        int k = detail::third_axis(axis(a), axis(b));
        double e = detail::levi_civita(axis(a), axis(b), k);
        return (e * kI * rep.gen("J" + std::to_string(k))).eval();
    }
    if (fa == 'J' && (fb == 'K' || fb == 'T')) {
        if (b == "T0") return CMatrix::Zero(5, 5);
        int k = detail::third_axis(axis(a), axis(b));
        if (k < 1 || k > 3) return CMatrix::Zero(5, 5); // same axis
        double e = detail::levi_civita(axis(a), axis(b), k);
        return (e * kI * rep.gen(std::string(1, fb) + std::to_string(k))).eval();
    }
    if (fa == 'K' && fb == 'K') {
        int k = detail::third_axis(axis(a), axis(b));
        double e = detail::levi_civita(axis(a), axis(b), k);
        return (-e * kI / c2 * rep.gen("J" + std::to_string(k))).eval();
    }
    if (fa == 'K' && fb == 'T') {
        // canonical order puts K before T; [T, K] entries are the negatives
        if (b == "T0") return (-kI * rep.gen("T" + std::to_string(axis(a)))).eval();
        if (axis(a) == axis(b)) return (-kI / c2 * rep.gen("T0")).eval();
        return CMatrix::Zero(5, 5);
    }
    if (fa == 'T' && fb == 'T') return CMatrix::Zero(5, 5);
    return CMatrix::Zero(5, 5);
}

/// Largest entrywise deviation of any computed bracket from the table.
inline double bracket_list_max_residual(const LieAlgebraRep& rep) {
    double worst = 0.0;
    auto ns = rep.names();
    for (const auto& a : ns)
        for (const auto& b : ns) {
            double d = (bracket(rep, a, b) - expected_bracket(rep, a, b)).cwiseAbs().maxCoeff();
            worst = std::max(worst, d);
        }
    return worst;
}

/// Largest entrywise Jacobi residual over all generator triples.
inline double jacobi_max_residual(const LieAlgebraRep& rep) {
    double worst = 0.0;
    auto ns = rep.names();
    for (const auto& a : ns)
        for (const auto& b : ns)
            for (const auto& c : ns) {
                const CMatrix &A = rep.gen(a), &B = rep.gen(b), &C = rep.gen(c);
                CMatrix j = commutator(A, commutator(B, C)) + commutator(B, commutator(C, A)) +
                            commutator(C, commutator(A, B));
                worst = std::max(worst, j.cwiseAbs().maxCoeff());
            }
    return worst;
}

struct ScanRow {
    double c;
    std::string quantity;
    double value;
};

/// For each c: Frobenius norms of the boost-boost brackets (these must fall
/// off as 1/c^2), the deviation of [T_m,K_m] from its (i/c^2) T_0 target, and
/// the whole-table and Jacobi residuals.
inline std::vector<ScanRow> contraction_scan(const std::vector<double>& c_values,
                                             double hbar = 1.0, double mass = 1.0) {
    if (c_values.empty())
        throw std::invalid_argument("contraction_scan: need at least one c value");
    std::vector<ScanRow> rows;
    for (double c : c_values) {
        LieAlgebraRep rep = build_poincare_rep(c, hbar, mass);
        auto fro = [](const CMatrix& m) { return m.norm(); };
        rows.push_back({c, "norm[K1,K2]", fro(bracket(rep, "K1", "K2"))});
        rows.push_back({c, "norm[K2,K3]", fro(bracket(rep, "K2", "K3"))});
        rows.push_back({c, "norm[K3,K1]", fro(bracket(rep, "K3", "K1"))});
        for (int m = 1; m <= 3; ++m) {
            std::string tm = "T" + std::to_string(m), km = "K" + std::to_string(m);
            CMatrix resid = bracket(rep, tm, km) - kI / (c * c) * rep.gen("T0");
            rows.push_back({c, "resid[" + tm + "," + km + "]", fro(resid)});
        }
        rows.push_back({c, "resid_bracket_table", bracket_list_max_residual(rep)});
        rows.push_back({c, "resid_jacobi", jacobi_max_residual(rep)});
    }
    return rows;
}

/// Least-squares slope of log(value) against log(c) for one scan quantity.
inline double loglog_slope(const std::vector<ScanRow>& rows, const std::string& quantity) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& r : rows) {
        if (r.quantity != quantity) continue;
        if (r.value <= 0.0)
            throw std::invalid_argument("loglog_slope: nonpositive value for " + quantity);
        double x = std::log(r.c), y = std::log(r.value);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("loglog_slope: need at least two rows");
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

/// Weakly relativistic coordinate change X = x - vt, T = t - vx/c^2 (no
/// Lorentz factor). Applying (v, then -v) returns (1 - v^2/c^2) * input.
inline std::pair<double, double> weak_transform(double x, double t, double v, double c) {
    if (c <= 0.0) throw std::invalid_argument("weak_transform: c must be positive");
    return {x - v * t, t - v * x / (c * c)};
}

// ============================================================================
// Periodic grid wavefunctions for the contracted (quantum) side.
// ============================================================================

/// Samples over x_j = origin + j*spacing, j = 0..N-1, periodic domain of
/// length N*spacing.
struct GridWavefunction {
    double origin = 0.0;
    double spacing = 1.0;
    CVector samples;

    int size() const { return static_cast<int>(samples.size()); }
    double x(int j) const { return origin + j * spacing; }

    double norm_sq() const { return samples.squaredNorm() * spacing; }

    void normalize() {
        double n2 = norm_sq();
        if (n2 <= 0.0) throw std::invalid_argument("GridWavefunction::normalize: zero state");
        samples /= std::sqrt(n2);
    }

    static GridWavefunction gaussian(int n, double x_min, double x_max, double width,
                                     double center = 0.0) {
        if (n < 8) throw std::invalid_argument("GridWavefunction::gaussian: grid too small");
        if (x_max <= x_min) throw std::invalid_argument("GridWavefunction::gaussian: empty domain");
        if (width <= 0.0) throw std::invalid_argument("GridWavefunction::gaussian: width must be positive");
        GridWavefunction psi;
        psi.origin = x_min;
        psi.spacing = (x_max - x_min) / n;
        psi.samples.resize(n);
        for (int j = 0; j < n; ++j) {
            double u = (psi.x(j) - center) / (2.0 * width);
            psi.samples(j) = std::exp(-u * u);
        }
        psi.normalize();
        return psi;
    }
};

inline Complex inner(const GridWavefunction& a, const GridWavefunction& b) {
    if (a.size() != b.size() || a.spacing != b.spacing)
        throw std::invalid_argument("inner: grids do not match");
    return a.samples.dot(b.samples) * a.spacing; // Eigen dot conjugates the left factor
}

/// Translate by an arbitrary real shift via the Fourier representation:
/// psi'(x) = psi(x - a). Exact for band-limited data on the periodic grid.
inline GridWavefunction translate_spectral(const GridWavefunction& psi, double a) {
    const int n = psi.size();
    Eigen::FFT<double> fft;
    std::vector<Complex> time(psi.samples.data(), psi.samples.data() + n), freq;
    fft.fwd(freq, time);
    const double period = n * psi.spacing;
    for (int f = 0; f < n; ++f) {
        int signed_f = (f <= n / 2) ? f : f - n;
        double kappa = 2.0 * std::numbers::pi * signed_f / period;
        freq[static_cast<std::size_t>(f)] *= std::exp(Complex(0.0, -kappa * a));
    }
    std::vector<Complex> shifted;
    fft.inv(shifted, freq);
    GridWavefunction out = psi;
    for (int j = 0; j < n; ++j) out.samples(j) = shifted[static_cast<std::size_t>(j)];
    return out;
}

/// Contracted boost: multiplication by exp(i m v x / hbar).
inline GridWavefunction boost_multiply(const GridWavefunction& psi, double v, double mass,
                                       double hbar) {
    if (hbar == 0.0) throw std::invalid_argument("boost_multiply: hbar must be nonzero");
    GridWavefunction out = psi;
    for (int j = 0; j < out.size(); ++j)
        out.samples(j) *= std::exp(Complex(0.0, mass * v * out.x(j) / hbar));
    return out;
}

struct CcrCheck {
    GridWavefunction state;
    CVector commutator_applied; // [P, Q] psi with P = -i hbar d/dx, Q = x
    double max_deviation;      // against -i hbar psi, shrinks as O(spacing^2)
};

/// Apply [P, Q] to a Gaussian test state using central differences. mass must
/// be nonzero because the position operator is the scaled boost generator
/// -hbar K / m; it drops out of the grid arithmetic itself.
inline CcrCheck ccr_check(double hbar, double mass, int n = 1024, double x_min = -20.0,
                          double x_max = 20.0, double width = 1.0) {
    if (mass == 0.0) throw std::invalid_argument("ccr_check: mass must be nonzero");
    GridWavefunction psi = GridWavefunction::gaussian(n, x_min, x_max, width);
    const double h = psi.spacing;
    auto central_diff = [&](const CVector& f) {
        CVector d(n);
        for (int j = 0; j < n; ++j) {
            int jp = (j + 1) % n, jm = (j + n - 1) % n;
            d(j) = (f(jp) - f(jm)) / (2.0 * h);
        }
        return d;
    };
    CVector xpsi(n), x_dpsi(n);
    for (int j = 0; j < n; ++j) xpsi(j) = psi.x(j) * psi.samples(j);
    CVector d_xpsi = central_diff(xpsi);
    CVector dpsi = central_diff(psi.samples);
    for (int j = 0; j < n; ++j) x_dpsi(j) = psi.x(j) * dpsi(j);

    CcrCheck out{psi, CVector(n), 0.0};
    for (int j = 0; j < n; ++j) {
        out.commutator_applied(j) = -kI * hbar * (d_xpsi(j) - x_dpsi(j));
        double dev = std::abs(out.commutator_applied(j) - (-kI * hbar * psi.samples(j)));
        out.max_deviation = std::max(out.max_deviation, dev);
    }
    return out;
}

/// Fitted ratio between boost-then-translate and translate-then-boost action
/// on a normalized state; equals exp(i a v m / hbar) in the continuum.
inline Complex phase_identity(double a, double v, double mass, double hbar,
                              const GridWavefunction& psi) {
    if (hbar == 0.0) throw std::invalid_argument("phase_identity: hbar must be nonzero");
    if (std::abs(psi.norm_sq() - 1.0) > 1e-8)
        throw std::invalid_argument("phase_identity: state must be normalized");
    GridWavefunction kt = boost_multiply(translate_spectral(psi, a), v, mass, hbar);
    GridWavefunction tk = translate_spectral(boost_multiply(psi, v, mass, hbar), a);
    return inner(tk, kt) / inner(tk, tk);
}

/// phase_identity on self-refining Gaussian grids: doubles the resolution
/// until two consecutive estimates agree to tol.
inline Complex phase_identity_refined(double a, double v, double mass, double hbar,
                                      double tol = 1e-8, int n0 = 512, int max_doublings = 6) {
    Complex prev{0.0, 0.0};
    bool have_prev = false;
    int n = n0;
    for (int it = 0; it <= max_doublings; ++it, n *= 2) {
        GridWavefunction psi = GridWavefunction::gaussian(n, -24.0, 24.0, 1.0);
        Complex z = phase_identity(a, v, mass, hbar, psi);
        if (have_prev && std::abs(z - prev) < tol) return z;
        prev = z;
        have_prev = true;
    }
    return prev;
}

} // namespace symqm
