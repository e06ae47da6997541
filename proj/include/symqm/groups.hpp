#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symqm {

/// Finite group as an explicit multiplication table over elements 0..N-1.
/// Element 0 is always the identity.
struct FiniteGroup {
    std::vector<std::vector<int>> mul;
    std::vector<int> inv;

    int order() const { return static_cast<int>(mul.size()); }

    int product(int g, int h) const {
        bounds(g); bounds(h);
        return mul[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
    }

    int inverse(int g) const {
        bounds(g);
        return inv[static_cast<std::size_t>(g)];
    }

    /// Table sanity: squareness, latin-square rows/columns, identity at 0,
    /// two-sided inverses, associativity.
    void validate() const {
        const int n = order();
        if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
        if (static_cast<int>(inv.size()) != n)
            throw std::invalid_argument("FiniteGroup: inverse list size mismatch");
        for (const auto& row : mul)
            if (static_cast<int>(row.size()) != n)
                throw std::invalid_argument("FiniteGroup: table is not square");
        for (int g = 0; g < n; ++g) {
            std::vector<bool> seen_row(static_cast<std::size_t>(n)), seen_col(seen_row);
            for (int h = 0; h < n; ++h) {
                int rgh = mul[g][h], rhg = mul[h][g];
                if (rgh < 0 || rgh >= n || rhg < 0 || rhg >= n)
                    throw std::invalid_argument("FiniteGroup: entry out of range");
                if (seen_row[rgh] || seen_col[rhg])
                    throw std::invalid_argument("FiniteGroup: table is not a latin square");
                seen_row[rgh] = seen_col[rhg] = true;
            }
            if (mul[0][g] != g || mul[g][0] != g)
                throw std::invalid_argument("FiniteGroup: element 0 is not the identity");
            if (mul[g][inv[g]] != 0 || mul[inv[g]][g] != 0)
                throw std::invalid_argument("FiniteGroup: bad inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
                        throw std::invalid_argument("FiniteGroup: table is not associative");
    }

    static FiniteGroup trivial() {
        FiniteGroup g;
        g.mul = {{0}};
        g.inv = {0};
        return g;
    }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw std::invalid_argument("FiniteGroup::cyclic: order must be positive");
        FiniteGroup g;
        g.mul.assign(n, std::vector<int>(n));
        g.inv.assign(n, 0);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
            g.inv[a] = (n - a) % n;
        }
        return g;
    }

    /// Dihedral group of order 2n: elements 0..n-1 are lattice translations
    /// r^j, elements n..2n-1 are the point reflections s_p = r^p s.
    static FiniteGroup dihedral(int n) {
        if (n < 1) throw std::invalid_argument("FiniteGroup::dihedral: order parameter must be positive");
        FiniteGroup g;
        const int N = 2 * n;
        g.mul.assign(N, std::vector<int>(N));
        g.inv.assign(N, 0);
        auto rot = [n](int j) { return ((j % n) + n) % n; };
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                g.mul[j][l] = rot(j + l);              // r^j r^l
                g.mul[j][n + l] = n + rot(l + j);      // r^j s_l = s_{l+j}
                g.mul[n + j][l] = n + rot(j - l);      // s_j r^l = s_{j-l}
                g.mul[n + j][n + l] = rot(j - l);      // s_j s_l = r^{j-l}
            }
        for (int j = 0; j < n; ++j) {
            g.inv[j] = rot(-j);
            g.inv[n + j] = n + j; // reflections are involutions
        }
        return g;
    }

private:
    void bounds(int g) const {
        if (g < 0 || g >= order()) throw std::invalid_argument("FiniteGroup: element out of range");
    }
};

} // namespace symqm
