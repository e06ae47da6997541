#pragma once

#include "symqm/groups.hpp"
#include "symqm/linalg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace symqm {

/// Unitary matrix representation of a FiniteGroup: one dim x dim matrix per
/// element, indexed like the group table.
struct GroupRep {
    FiniteGroup group;
    int dim = 0;
    std::vector<CMatrix> d;

    const CMatrix& operator()(int g) const {
        if (g < 0 || g >= group.order())
            throw std::invalid_argument("GroupRep: element out of range");
        return d[static_cast<std::size_t>(g)];
    }

    Complex character(int g) const { return (*this)(g).trace(); }
};

inline double homomorphism_deviation(const GroupRep& rep) {
    double worst = 0.0;
    const int n = rep.group.order();
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) {
            CMatrix lhs = rep(g) * rep(h);
            worst = std::max(worst, (lhs - rep(rep.group.product(g, h))).cwiseAbs().maxCoeff());
        }
    return worst;
}

inline double rep_unitarity_deviation(const GroupRep& rep) {
    double worst = 0.0;
    for (int g = 0; g < rep.group.order(); ++g)
        worst = std::max(worst, unitarity_deviation(rep(g)));
    return worst;
}

inline double inverse_adjoint_deviation(const GroupRep& rep) {
    double worst = 0.0;
    for (int g = 0; g < rep.group.order(); ++g)
        worst = std::max(worst,
                         (rep(rep.group.inverse(g)) - rep(g).adjoint().eval()).cwiseAbs().maxCoeff());
    return worst;
}

/// Largest deviation of sum_g (n/N) [D(g^-1)]_kj [D(g)]_lm from d_jl d_km.
/// Vanishes exactly when the rep is irreducible; order-1 otherwise.
inline double verify_orthogonality(const GroupRep& rep) {
    const int N = rep.group.order(), n = rep.dim;
    double worst = 0.0;
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m) {
                    Complex acc{0.0, 0.0};
                    for (int g = 0; g < N; ++g)
                        acc += rep(rep.group.inverse(g))(k, j) * rep(g)(l, m);
                    acc *= static_cast<double>(n) / static_cast<double>(N);
                    double target = (j == l && k == m) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(acc - target));
                }
    return worst;
}

/// Per-element expectation values <D(g)> of the symmetry elements in a state.
struct RepAverages {
    std::vector<Complex> avg;
};

/// <D(g)> = Tr(rho D(g)). rho must be hermitian on the rep's space.
inline RepAverages reproduce_averages(const GroupRep& rep, const CMatrix& rho,
                                      double herm_tol = 1e-10) {
    if (rho.rows() != rep.dim || rho.cols() != rep.dim)
        throw std::invalid_argument("reproduce_averages: state dimension mismatch");
    if (hermiticity_deviation(rho) > herm_tol)
        throw std::invalid_argument("reproduce_averages: rho is not hermitian");
    RepAverages out;
    out.avg.reserve(static_cast<std::size_t>(rep.group.order()));
    for (int g = 0; g < rep.group.order(); ++g)
        out.avg.push_back((rho * rep(g)).trace());
    return out;
}

/// rho = (n/N) sum_g D(g^-1) <D(g)>. Inverts reproduce_averages exactly when
/// the rep is irreducible (Great Orthogonality contraction).
inline CMatrix density_from_averages(const GroupRep& rep, const RepAverages& averages) {
    if (static_cast<int>(averages.avg.size()) != rep.group.order())
        throw std::invalid_argument("density_from_averages: one average per group element required");
    CMatrix rho = CMatrix::Zero(rep.dim, rep.dim);
    for (int g = 0; g < rep.group.order(); ++g)
        rho += rep(rep.group.inverse(g)) * averages.avg[static_cast<std::size_t>(g)];
    rho *= static_cast<double>(rep.dim) / static_cast<double>(rep.group.order());
    return rho;
}

// ---------------------------------------------------------------------------
// Rep builders used by the gallery.
// ---------------------------------------------------------------------------

inline GroupRep trivial_rep(FiniteGroup group) {
    GroupRep rep;
    rep.dim = 1;
    rep.d.assign(static_cast<std::size_t>(group.order()), CMatrix::Identity(1, 1));
    rep.group = std::move(group);
    return rep;
}

/// One-dimensional character chi_m(r^j) = exp(2 pi i m j / N) of Z_N.
inline GroupRep cyclic_phase_rep(int n, int m) {
    GroupRep rep;
    rep.group = FiniteGroup::cyclic(n);
    rep.dim = 1;
    for (int j = 0; j < n; ++j) {
        CMatrix d(1, 1);
        d(0, 0) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * m * j / n));
        rep.d.push_back(d);
    }
    return rep;
}

/// Reducible two-dimensional rep of Z_N: diag of two characters. With
/// (m1, m2) = (-1, 1) this is the bare lattice-translation matrix diag(
/// e^{-ika}, e^{ika}) at a = 2 pi j/(kN), kept as an orthogonality
/// counterexample: no reflections, no irreducibility.
inline GroupRep cyclic_diag_pair_rep(int n, int m1, int m2) {
    GroupRep rep;
    rep.group = FiniteGroup::cyclic(n);
    rep.dim = 2;
    for (int j = 0; j < n; ++j) {
        CMatrix d = CMatrix::Zero(2, 2);
        d(0, 0) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * m1 * j / n));
        d(1, 1) = std::exp(Complex(0.0, 2.0 * std::numbers::pi * m2 * j / n));
        rep.d.push_back(d);
    }
    return rep;
}

/// Two-dimensional translation/reflection irrep of the dihedral group on the
/// cyclic lattice a_j = 2 pi j / (k N): translations D(r^j) = diag(e^{-ik a_j},
/// e^{ik a_j}), reflections D(s_p) = [[0, w^-p],[w^p, 0]]. Irreducible for
/// N >= 3. The wavenumber k fixes the lattice spacing but drops out of the
/// matrices; it is kept for interface parity with the interferometer module.
inline GroupRep dihedral_translation_reflection_rep(int n, double k = 1.0) {
    if (k <= 0.0) throw std::invalid_argument("dihedral rep: wavenumber must be positive");
    GroupRep rep;
    rep.group = FiniteGroup::dihedral(n);
    rep.dim = 2;
    const double step = 2.0 * std::numbers::pi / n; // k * a_1
    for (int j = 0; j < n; ++j) {
        CMatrix d = CMatrix::Zero(2, 2);
        d(0, 0) = std::exp(Complex(0.0, -step * j));
        d(1, 1) = std::exp(Complex(0.0, step * j));
        rep.d.push_back(d);
    }
    for (int p = 0; p < n; ++p) {
        CMatrix d = CMatrix::Zero(2, 2);
        d(0, 1) = std::exp(Complex(0.0, -step * p));
        d(1, 0) = std::exp(Complex(0.0, step * p));
        rep.d.push_back(d);
    }
    return rep;
}

inline GroupRep direct_sum(const GroupRep& a, const GroupRep& b) {
    if (a.group.order() != b.group.order())
        throw std::invalid_argument("direct_sum: reps live on different groups");
    GroupRep rep;
    rep.group = a.group;
    rep.dim = a.dim + b.dim;
    for (int g = 0; g < a.group.order(); ++g) {
        CMatrix d = CMatrix::Zero(rep.dim, rep.dim);
        d.topLeftCorner(a.dim, a.dim) = a(g);
        d.bottomRightCorner(b.dim, b.dim) = b(g);
        rep.d.push_back(d);
    }
    return rep;
}

} // namespace symqm
