#pragma once

// Dense exact-rational linear algebra for the small systems that show up in
// representation-theoretic projections and intersection-form invariants.

#include <g2forge/rational.hpp>

#include <stdexcept>
#include <vector>

namespace g2forge {

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline RatMat identity_matrix(std::size_t n) {
    RatMat m(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
    std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
    RatMat out(n, RatVec(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (a[i][j] == 0) continue;
            for (std::size_t l = 0; l < p; ++l) out[i][l] += a[i][j] * b[j][l];
        }
    return out;
}

/// Row-reduce in place; returns pivot columns. Rows below the returned pivot
/// count end up zero.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int mat_rank(RatMat m) { return static_cast<int>(rref(m).size()); }

/// Solve A x = b exactly. Returns false when the system is inconsistent;
/// free variables are set to zero.
inline bool solve_linear(const RatMat& a, const RatVec& b, RatVec& x) {
    std::size_t rows = a.size(), cols = rows == 0 ? 0 : a[0].size();
    RatMat aug(rows, RatVec(cols + 1, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return false; // pivot in RHS column
    x.assign(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
    return true;
}

inline Rational determinant(RatMat m) {
    std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c] == 0) ++sel;
        if (sel == n) return 0;
        if (sel != c) {
            std::swap(m[sel], m[c]);
            det = -det;
        }
        det *= m[c][c];
        Rational inv = Rational(1) / m[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c] == 0) continue;
            Rational f = m[i][c] * inv;
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;
    int signature() const { return positive - negative; }
};

/// Sylvester inertia of a symmetric matrix by exact congruence reduction.
/// A zero diagonal with a nonzero off-diagonal entry is repaired by the
/// congruence row_i += row_j, col_i += col_j, which makes the diagonal 2*a_ij.
inline Inertia symmetric_inertia(RatMat m) {
    std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i][j] != m[j][i]) throw std::invalid_argument("inertia: matrix not symmetric");

    Inertia res;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && m[i][i] != 0) {
                p = i;
                break;
            }
        if (p == n) {
            // all remaining diagonals vanish; look for an off-diagonal entry
            std::size_t bi = n, bj = n;
            for (std::size_t i = 0; i < n && bi == n; ++i) {
                if (done[i]) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (!done[j] && j != i && m[i][j] != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            }
            if (bi == n) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) ++res.zero;
                return res;
            }
            for (std::size_t k = 0; k < n; ++k) m[bi][k] += m[bj][k];
            for (std::size_t k = 0; k < n; ++k) m[k][bi] += m[k][bj];
            p = bi;
        }
        Rational d = m[p][p];
        if (d > 0)
            ++res.positive;
        else
            ++res.negative;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i] || i == p || m[i][p] == 0) continue;
            Rational f = m[i][p] / d;
            for (std::size_t k = 0; k < n; ++k) m[i][k] -= f * m[p][k];
            for (std::size_t k = 0; k < n; ++k) m[k][i] -= f * m[k][p];
        }
        done[p] = true;
    }
    return res;
}

} // namespace g2forge
