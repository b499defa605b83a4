#pragma once

/// Integer cochain complexes, Smith normal form, and the gerbe class group.
///
/// A gerbe on a compact manifold is recorded here by its integer degree-3
/// Chern data: tensor product and inverse become cocycle addition and
/// negation, and the class coordinates add. On the subdivided cubical torus
/// the Poincare dual of a coordinate 4-subtorus is an explicit 3-cocycle
/// (signed transverse intersection numbers), so the brane-counting group law
/// is checked with exact integers end to end.

#include <g2forge/form.hpp>
#include <g2forge/rational.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2forge {

/// One signed incidence entry of a boundary matrix.
struct BoundaryEntry {
    int row = 0;   // cell index in dimension k-1
    int col = 0;   // cell index in dimension k
    long long value = 0;
};

/// Chain complex of free abelian groups given by explicit boundary matrices.
/// Construction verifies index ranges and that consecutive boundaries
/// compose to zero.
class FiniteComplex {
public:
    FiniteComplex(std::vector<int> cell_counts, std::vector<std::vector<BoundaryEntry>> boundaries,
                  std::vector<std::vector<std::string>> labels = {})
        : counts_(std::move(cell_counts)), boundaries_(std::move(boundaries)),
          labels_(std::move(labels)) {
        if (counts_.empty()) throw std::invalid_argument("FiniteComplex: no cells");
        for (int c : counts_)
            if (c < 0) throw std::invalid_argument("FiniteComplex: negative cell count");
        if (boundaries_.size() + 1 != counts_.size())
            throw std::invalid_argument("FiniteComplex: need one boundary matrix per dimension");
        if (!labels_.empty() && labels_.size() != counts_.size())
            throw std::invalid_argument("FiniteComplex: label list does not match dimensions");
        for (std::size_t d = 0; d < labels_.size(); ++d)
            if (!labels_[d].empty() && labels_[d].size() != static_cast<std::size_t>(counts_[d]))
                throw std::invalid_argument("FiniteComplex: label count mismatch");
        for (std::size_t k = 1; k < counts_.size(); ++k)
            for (const auto& e : boundaries_[k - 1])
                if (e.row < 0 || e.row >= counts_[k - 1] || e.col < 0 || e.col >= counts_[k])
                    throw std::invalid_argument("FiniteComplex: boundary entry out of range");
        verify_boundary_squares();
    }

    int dimension() const { return static_cast<int>(counts_.size()) - 1; }
    int cells(int k) const {
        return (k < 0 || k > dimension()) ? 0 : counts_[static_cast<std::size_t>(k)];
    }
    /// Boundary matrix of cells of dimension k, 1 <= k <= dimension().
    const std::vector<BoundaryEntry>& boundary(int k) const {
        if (k < 1 || k > dimension())
            throw std::invalid_argument("FiniteComplex::boundary: dimension out of range");
        return boundaries_[static_cast<std::size_t>(k - 1)];
    }
    const std::string& label(int k, int index) const {
        static const std::string empty;
        if (k < 0 || k > dimension() || labels_.empty()) return empty;
        const auto& l = labels_[static_cast<std::size_t>(k)];
        if (l.empty()) return empty;
        return l.at(static_cast<std::size_t>(index));
    }

private:
    void verify_boundary_squares() const {
        for (int k = 2; k <= dimension(); ++k) {
            // compose boundary(k) then boundary(k-1), column by column
            std::vector<std::map<int, long long>> inner(static_cast<std::size_t>(counts_[k - 1]));
            for (const auto& e : boundaries_[static_cast<std::size_t>(k - 2)])
                inner[static_cast<std::size_t>(e.col)][e.row] += e.value;
            std::vector<std::map<int, long long>> composite(static_cast<std::size_t>(counts_[k]));
            for (const auto& e : boundaries_[static_cast<std::size_t>(k - 1)])
                for (const auto& [r, v] : inner[static_cast<std::size_t>(e.row)])
                    composite[static_cast<std::size_t>(e.col)][r] += e.value * v;
            for (const auto& col : composite)
                for (const auto& [r, v] : col)
                    if (v != 0)
                        throw std::invalid_argument(
                            "FiniteComplex: boundary does not square to zero");
        }
    }

    std::vector<int> counts_;
    std::vector<std::vector<BoundaryEntry>> boundaries_;
    std::vector<std::vector<std::string>> labels_;
};

/// Integer k-cochain: one value per k-cell.
struct Cochain {
    int degree = 0;
    std::vector<long long> values;
};

/// Alternating-sum coboundary; throws at the top dimension.
inline Cochain coboundary(const FiniteComplex& x, const Cochain& c) {
    if (c.degree < 0 || c.degree >= x.dimension())
        throw std::invalid_argument("coboundary: degree must be below the top dimension");
    if (c.values.size() != static_cast<std::size_t>(x.cells(c.degree)))
        throw std::invalid_argument("coboundary: cochain size mismatch");
    Cochain out;
    out.degree = c.degree + 1;
    out.values.assign(static_cast<std::size_t>(x.cells(c.degree + 1)), 0);
    for (const auto& e : x.boundary(c.degree + 1))
        out.values[static_cast<std::size_t>(e.col)] +=
            e.value * c.values[static_cast<std::size_t>(e.row)];
    return out;
}

inline bool is_cocycle(const FiniteComplex& x, const Cochain& c) {
    if (c.degree == x.dimension()) return true;
    Cochain d = coboundary(x, c);
    return std::all_of(d.values.begin(), d.values.end(), [](long long v) { return v == 0; });
}

/// Diagonal of the Smith normal form: positive entries, each dividing the
/// next, padded implicitly by zeros up to min(rows, cols).
struct SmithNormalForm {
    int rows = 0;
    int cols = 0;
    std::vector<BigInt> diagonal;

    int rank() const { return static_cast<int>(diagonal.size()); }
    std::vector<BigInt> torsion() const {
        std::vector<BigInt> out;
        for (const auto& d : diagonal)
            if (d > 1) out.push_back(d);
        return out;
    }
};

namespace cechdetail {

/// Textbook Smith reduction on a dense big-integer matrix.
inline std::vector<BigInt> dense_smith_diagonal(std::vector<std::vector<BigInt>> a) {
    std::vector<BigInt> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        std::size_t pr = t, pc = t;
        BigInt best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                BigInt v = abs(a[i][j]);
                if (best == 0 || v < best) {
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        if (best == 0) break;
        std::swap(a[t], a[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pc]);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {  // remainder became the smaller pivot
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    clean = false;
                }
            }
            if (clean) {
                // enforce divisibility of the trailing block
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                            clean = false;
                        }
            }
        }
        if (a[t][t] < 0)
            for (std::size_t j = t; j < cols; ++j) a[t][j] = -a[t][j];
        diag.push_back(a[t][t]);
        ++t;
    }
    return diag;
}

} // namespace cechdetail

/// Smith normal form of a sparse integer matrix. Unit pivots are eliminated
/// sparsely with a fewest-nonzeros heuristic; whatever residue remains goes
/// through the dense reduction. Exact throughout.
inline SmithNormalForm smith_normal_form(int rows, int cols,
                                         const std::vector<BoundaryEntry>& entries) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("smith_normal_form: negative shape");
    SmithNormalForm out;
    out.rows = rows;
    out.cols = cols;

    std::vector<std::map<int, BigInt>> row(static_cast<std::size_t>(rows));
    std::vector<std::set<int>> col_rows(static_cast<std::size_t>(cols));
    for (const auto& e : entries) {
        if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
            throw std::invalid_argument("smith_normal_form: entry out of range");
        if (e.value == 0) continue;
        auto& cell = row[static_cast<std::size_t>(e.row)][e.col];
        cell += e.value;
        if (cell == 0) row[static_cast<std::size_t>(e.row)].erase(e.col);
    }
    for (int r = 0; r < rows; ++r)
        for (const auto& [c, v] : row[static_cast<std::size_t>(r)])
            col_rows[static_cast<std::size_t>(c)].insert(r);

    std::set<std::pair<int, int>> queue;  // (column nonzeros, column)
    for (int c = 0; c < cols; ++c)
        if (!col_rows[static_cast<std::size_t>(c)].empty())
            queue.insert({static_cast<int>(col_rows[static_cast<std::size_t>(c)].size()), c});
    auto queue_touch = [&](int c, int old_n) {
        int n = static_cast<int>(col_rows[static_cast<std::size_t>(c)].size());
        if (old_n > 0) queue.erase({old_n, c});
        if (n > 0) queue.insert({n, c});
    };

    int units = 0;
    while (!queue.empty()) {
        // first column in nonzero-count order that holds a unit entry
        int pc = -1, pr = -1;
        for (const auto& [n, c] : queue) {
            std::size_t best_len = 0;
            for (int r : col_rows[static_cast<std::size_t>(c)]) {
                const BigInt& v = row[static_cast<std::size_t>(r)].at(c);
                if (v != 1 && v != -1) continue;
                std::size_t len = row[static_cast<std::size_t>(r)].size();
                if (pr < 0 || len < best_len) {
                    pr = r;
                    best_len = len;
                }
            }
            if (pr >= 0) {
                pc = c;
                break;
            }
        }
        if (pc < 0) break;  // no unit pivot anywhere: hand off to the dense path

        const BigInt pivot = row[static_cast<std::size_t>(pr)].at(pc);
        // clear the pivot column with row operations
        std::vector<int> victims(col_rows[static_cast<std::size_t>(pc)].begin(),
                                 col_rows[static_cast<std::size_t>(pc)].end());
        for (int r : victims) {
            if (r == pr) continue;
            BigInt factor = row[static_cast<std::size_t>(r)].at(pc) * pivot;  // pivot inverse
            for (const auto& [c, v] : row[static_cast<std::size_t>(pr)]) {
                auto& target = row[static_cast<std::size_t>(r)];
                int old_n = static_cast<int>(col_rows[static_cast<std::size_t>(c)].size());
                auto it = target.find(c);
                if (it == target.end()) {
                    target.emplace(c, -factor * v);
                    col_rows[static_cast<std::size_t>(c)].insert(r);
                } else {
                    it->second -= factor * v;
                    if (it->second == 0) {
                        target.erase(it);
                        col_rows[static_cast<std::size_t>(c)].erase(r);
                    }
                }
                queue_touch(c, old_n);
            }
        }
        // drop the pivot row; clearing it is a column operation that touches
        // nothing else because the pivot column is now zero elsewhere
        for (const auto& [c, v] : row[static_cast<std::size_t>(pr)]) {
            int old_n = static_cast<int>(col_rows[static_cast<std::size_t>(c)].size());
            col_rows[static_cast<std::size_t>(c)].erase(pr);
            queue_touch(c, old_n);
        }
        row[static_cast<std::size_t>(pr)].clear();
        ++units;
    }

    out.diagonal.assign(static_cast<std::size_t>(units), BigInt(1));

    // compact the residue and reduce it densely
    std::map<int, std::size_t> rmap, cmap;
    for (int r = 0; r < rows; ++r)
        if (!row[static_cast<std::size_t>(r)].empty()) rmap.emplace(r, rmap.size());
    for (int c = 0; c < cols; ++c)
        if (!col_rows[static_cast<std::size_t>(c)].empty()) cmap.emplace(c, cmap.size());
    if (!rmap.empty()) {
        std::vector<std::vector<BigInt>> dense(rmap.size(), std::vector<BigInt>(cmap.size(), 0));
        for (const auto& [r, ri] : rmap)
            for (const auto& [c, v] : row[static_cast<std::size_t>(r)]) dense[ri][cmap.at(c)] = v;
        for (auto& d : cechdetail::dense_smith_diagonal(std::move(dense)))
            out.diagonal.push_back(std::move(d));
    }
    return out;
}

/// Free rank and torsion divisors of an integer cohomology group.
struct CohomologyGroup {
    int free_rank = 0;
    std::vector<BigInt> torsion;
};

namespace cechdetail {

/// Matrix of the coboundary C^k -> C^{k+1}: the transpose of boundary(k+1).
inline std::vector<BoundaryEntry> coboundary_matrix(const FiniteComplex& x, int k) {
    std::vector<BoundaryEntry> out;
    if (k < 0 || k >= x.dimension()) return out;
    out.reserve(x.boundary(k + 1).size());
    for (const auto& e : x.boundary(k + 1)) out.push_back({e.col, e.row, e.value});
    return out;
}

inline SmithNormalForm coboundary_smith(const FiniteComplex& x, int k) {
    if (k < 0 || k >= x.dimension()) return SmithNormalForm{};
    return smith_normal_form(x.cells(k + 1), x.cells(k), cechdetail::coboundary_matrix(x, k));
}

} // namespace cechdetail

/// H^k with integer coefficients via Smith normal form of the coboundaries
/// into and out of degree k.
inline CohomologyGroup cohomology(const FiniteComplex& x, int k) {
    if (k < 0 || k > x.dimension())
        throw std::invalid_argument("cohomology: degree out of range");
    SmithNormalForm below = cechdetail::coboundary_smith(x, k - 1);
    SmithNormalForm above = cechdetail::coboundary_smith(x, k);
    CohomologyGroup g;
    g.free_rank = x.cells(k) - above.rank() - below.rank();
    g.torsion = below.torsion();
    return g;
}

/// All cohomology groups at once, factoring each coboundary exactly once.
inline std::vector<CohomologyGroup> cohomology_all(const FiniteComplex& x) {
    std::vector<SmithNormalForm> snf(static_cast<std::size_t>(x.dimension()) + 1);
    for (int k = 0; k < x.dimension(); ++k)
        snf[static_cast<std::size_t>(k)] = cechdetail::coboundary_smith(x, k);
    std::vector<CohomologyGroup> out(static_cast<std::size_t>(x.dimension()) + 1);
    for (int k = 0; k <= x.dimension(); ++k) {
        CohomologyGroup& g = out[static_cast<std::size_t>(k)];
        int above = (k < x.dimension()) ? snf[static_cast<std::size_t>(k)].rank() : 0;
        if (k > 0) {
            g.free_rank = x.cells(k) - above - snf[static_cast<std::size_t>(k - 1)].rank();
            g.torsion = snf[static_cast<std::size_t>(k - 1)].torsion();
        } else {
            g.free_rank = x.cells(0) - above;
        }
    }
    return out;
}

/// Downward closure of a facet list into a simplicial chain complex.
/// Vertices may be arbitrary integers; cells are labelled by their sorted
/// vertex tuples.
inline FiniteComplex simplicial_complex(const std::vector<std::vector<int>>& facets) {
    if (facets.empty()) throw std::invalid_argument("simplicial_complex: no facets");
    std::size_t top = 0;
    for (const auto& f : facets) {
        if (f.empty()) throw std::invalid_argument("simplicial_complex: empty facet");
        top = std::max(top, f.size() - 1);
    }
    std::vector<std::set<std::vector<int>>> faces(top + 1);
    for (const auto& f : facets) {
        std::vector<int> s = f;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplicial_complex: repeated vertex in facet");
        // enumerate all nonempty subsets
        std::size_t n = s.size();
        for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < n; ++i)
                if (bits & (1u << i)) sub.push_back(s[i]);
            faces[sub.size() - 1].insert(std::move(sub));
        }
    }
    std::vector<std::map<std::vector<int>, int>> index(top + 1);
    std::vector<int> counts(top + 1);
    std::vector<std::vector<std::string>> labels(top + 1);
    for (std::size_t d = 0; d <= top; ++d) {
        for (const auto& s : faces[d]) {
            index[d].emplace(s, static_cast<int>(index[d].size()));
            std::string name;
            for (int v : s) name += (name.empty() ? "" : ".") + std::to_string(v);
            labels[d].push_back(std::move(name));
        }
        counts[d] = static_cast<int>(index[d].size());
    }
    std::vector<std::vector<BoundaryEntry>> boundaries(top);
    for (std::size_t d = 1; d <= top; ++d) {
        for (const auto& [s, idx] : index[d]) {
            long long sign = 1;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::vector<int> face;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face.push_back(s[i]);
                boundaries[d - 1].push_back({index[d - 1].at(face), idx, sign});
                sign = -sign;
            }
        }
    }
    return FiniteComplex(std::move(counts), std::move(boundaries), std::move(labels));
}

/// Cubical torus (R/Z)^n subdivided into m segments per axis. Cells are
/// products of vertices {i/m} and edges [i/m, (i+1)/m]; the spanned axes are
/// kept as a bitmask compatible with the exterior-algebra conventions.
class CubicalTorus {
public:
    struct Cell {
        Mask spanned = 0;
        std::array<std::uint8_t, 7> position{};  // 1-based axes at indices 0..n-1
    };

    CubicalTorus(int dimension, int subdivisions) : n_(dimension), m_(subdivisions) {
        if (n_ < 1 || n_ > 7)
            throw std::invalid_argument("CubicalTorus: dimension must be within 1..7");
        if (m_ < 2) throw std::invalid_argument("CubicalTorus: need at least 2 segments per axis");
        for (int k = 0; k <= n_; ++k) {
            std::vector<Mask> masks;
            for (Mask s = 0; s <= mask_of_all(); ++s)
                if (mask_degree(s) == k && (s | mask_of_all()) == mask_of_all()) masks.push_back(s);
            masks_.push_back(std::move(masks));
        }
        pos_states_ = 1;
        for (int i = 0; i < n_; ++i) pos_states_ *= m_;

        std::vector<int> counts;
        for (int k = 0; k <= n_; ++k)
            counts.push_back(static_cast<int>(masks_[static_cast<std::size_t>(k)].size()) *
                             pos_states_);
        std::vector<std::vector<BoundaryEntry>> boundaries(static_cast<std::size_t>(n_));
        for (int k = 1; k <= n_; ++k) {
            auto& rows = boundaries[static_cast<std::size_t>(k - 1)];
            for (int idx = 0; idx < counts[static_cast<std::size_t>(k)]; ++idx) {
                Cell c = decode(k, idx);
                long long sign = 1;
                for (int axis = 1; axis <= n_; ++axis) {
                    if (!(c.spanned & axis_mask(axis))) continue;
                    Cell lower = c;
                    lower.spanned = static_cast<Mask>(c.spanned & ~axis_mask(axis));
                    Cell upper = lower;
                    upper.position[static_cast<std::size_t>(axis - 1)] = static_cast<std::uint8_t>(
                        (c.position[static_cast<std::size_t>(axis - 1)] + 1) % m_);
                    rows.push_back({encode(upper), idx, sign});
                    rows.push_back({encode(lower), idx, -sign});
                    sign = -sign;
                }
            }
        }
        complex_ = std::make_unique<FiniteComplex>(std::move(counts), std::move(boundaries));
    }

    int dimension() const { return n_; }
    int subdivisions() const { return m_; }
    const FiniteComplex& complex() const { return *complex_; }
    Mask mask_of_all() const { return static_cast<Mask>((1u << n_) - 1); }
    const std::vector<Mask>& masks_of_dimension(int k) const {
        return masks_.at(static_cast<std::size_t>(k));
    }

    /// Index of a cell within its dimension.
    int cell_index(const Cell& c) const {
        int k = mask_degree(c.spanned);
        if ((c.spanned | mask_of_all()) != mask_of_all())
            throw std::invalid_argument("CubicalTorus: spanned axes outside the torus");
        for (int i = 0; i < n_; ++i)
            if (c.position[static_cast<std::size_t>(i)] >= m_)
                throw std::invalid_argument("CubicalTorus: position outside the subdivision");
        return encode_checked(k, c);
    }

    Cell cell(int k, int index) const {
        if (k < 0 || k > n_ || index < 0 ||
            index >= complex_->cells(k))
            throw std::invalid_argument("CubicalTorus: cell index out of range");
        return decode(k, index);
    }

    /// Fundamental chain of the coordinate k-subtorus spanning `axes` at the
    /// transverse vertex positions of `base`: every aligned cell with
    /// coefficient one. The result is a cycle.
    std::vector<long long> coordinate_cycle(Mask axes,
                                            const std::array<std::uint8_t, 7>& base) const {
        int k = mask_degree(axes);
        if ((axes | mask_of_all()) != mask_of_all())
            throw std::invalid_argument("coordinate_cycle: axes outside the torus");
        std::vector<long long> chain(static_cast<std::size_t>(complex_->cells(k)), 0);
        Cell c;
        c.spanned = axes;
        c.position = base;
        for (int axis = 1; axis <= n_; ++axis)
            if (axes & axis_mask(axis)) c.position[static_cast<std::size_t>(axis - 1)] = 0;
        fill_cycle(chain, c, axes, 1);
        return chain;
    }

private:
    void fill_cycle(std::vector<long long>& chain, Cell c, Mask remaining, int axis) const {
        if (axis > n_) {
            chain[static_cast<std::size_t>(encode(c))] += 1;
            return;
        }
        if (!(remaining & axis_mask(axis))) {
            fill_cycle(chain, c, remaining, axis + 1);
            return;
        }
        for (int p = 0; p < m_; ++p) {
            c.position[static_cast<std::size_t>(axis - 1)] = static_cast<std::uint8_t>(p);
            fill_cycle(chain, c, remaining, axis + 1);
        }
    }

    int mask_ordinal(int k, Mask s) const {
        const auto& masks = masks_[static_cast<std::size_t>(k)];
        auto it = std::lower_bound(masks.begin(), masks.end(), s);
        if (it == masks.end() || *it != s)
            throw std::invalid_argument("CubicalTorus: unknown axis set");
        return static_cast<int>(it - masks.begin());
    }

    int encode(const Cell& c) const { return encode_checked(mask_degree(c.spanned), c); }

    int encode_checked(int k, const Cell& c) const {
        int pos = 0;
        for (int i = n_ - 1; i >= 0; --i)
            pos = pos * m_ + c.position[static_cast<std::size_t>(i)];
        return mask_ordinal(k, c.spanned) * pos_states_ + pos;
    }

    Cell decode(int k, int index) const {
        Cell c;
        c.spanned = masks_[static_cast<std::size_t>(k)][static_cast<std::size_t>(index / pos_states_)];
        int pos = index % pos_states_;
        for (int i = 0; i < n_; ++i) {
            c.position[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(pos % m_);
            pos /= m_;
        }
        return c;
    }

    int n_;
    int m_;
    int pos_states_ = 1;
    std::vector<std::vector<Mask>> masks_;
    std::unique_ptr<FiniteComplex> complex_;
};

inline long long pair_cochain_cycle(const Cochain& c, const std::vector<long long>& chain) {
    if (c.values.size() != chain.size())
        throw std::invalid_argument("pair_cochain_cycle: size mismatch");
    long long acc = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) acc += c.values[i] * chain[i];
    return acc;
}

/// A gerbe recorded by its integer Chern data: a degree-3 cocycle plus its
/// pairings against the coordinate 3-cycles, which coordinatize the free
/// degree-3 cohomology of the torus.
struct GerbeClass {
    const CubicalTorus* torus = nullptr;
    Cochain representative;
    std::vector<long long> coordinates;
};

/// Coordinates of a degree-3 cocycle: its pairings with the coordinate
/// 3-cycles at the base point, listed over ascending axis masks.
inline std::vector<long long> class_coordinates(const CubicalTorus& t, const Cochain& c) {
    if (c.degree != 3 || t.dimension() < 3)
        throw std::invalid_argument("class_coordinates: need a degree-3 cochain");
    if (!is_cocycle(t.complex(), c))
        throw std::invalid_argument("class_coordinates: cochain is not a cocycle");
    std::vector<long long> out;
    for (Mask axes : t.masks_of_dimension(3))
        out.push_back(pair_cochain_cycle(c, t.coordinate_cycle(axes, {})));
    return out;
}

inline GerbeClass make_gerbe_class(const CubicalTorus& t, Cochain c) {
    GerbeClass g;
    g.torus = &t;
    g.coordinates = class_coordinates(t, c);
    g.representative = std::move(c);
    return g;
}

inline GerbeClass tensor(const GerbeClass& a, const GerbeClass& b) {
    if (a.torus != b.torus)
        throw std::invalid_argument("tensor: gerbes live on different complexes");
    Cochain sum = a.representative;
    for (std::size_t i = 0; i < sum.values.size(); ++i)
        sum.values[i] += b.representative.values[i];
    return make_gerbe_class(*a.torus, std::move(sum));
}

inline GerbeClass inverse(const GerbeClass& g) {
    Cochain neg = g.representative;
    for (auto& v : neg.values) v = -v;
    return make_gerbe_class(*g.torus, std::move(neg));
}

inline GerbeClass scale(const GerbeClass& g, long long q) {
    Cochain s = g.representative;
    for (auto& v : s.values) v *= q;
    return make_gerbe_class(*g.torus, std::move(s));
}

inline bool is_trivial(const GerbeClass& g) {
    return std::all_of(g.coordinates.begin(), g.coordinates.end(),
                       [](long long v) { return v == 0; });
}

/// Poincare dual of the coordinate 4-subtorus spanning `subtorus_axes`,
/// placed transversally at the edge offsets given for the three normal axes.
/// The dual 3-cocycle assigns 1 to each 3-cell that crosses the subtorus
/// (spans exactly the normal axes at the matching offsets) and 0 elsewhere.
inline GerbeClass pd_cocycle(const CubicalTorus& t, Mask subtorus_axes,
                             const std::array<std::uint8_t, 7>& offsets = {}) {
    if (t.dimension() != 7)
        throw std::invalid_argument("pd_cocycle: the ambient torus must be 7-dimensional");
    if (mask_degree(subtorus_axes) != 4 || (subtorus_axes | t.mask_of_all()) != t.mask_of_all())
        throw std::invalid_argument("pd_cocycle: need 4 axes inside the torus");
    Mask normal = static_cast<Mask>(t.mask_of_all() & ~subtorus_axes);
    for (int axis = 1; axis <= t.dimension(); ++axis)
        if ((normal & axis_mask(axis)) &&
            offsets[static_cast<std::size_t>(axis - 1)] >= t.subdivisions())
            throw std::invalid_argument("pd_cocycle: offset outside the subdivision");

    Cochain c;
    c.degree = 3;
    c.values.assign(static_cast<std::size_t>(t.complex().cells(3)), 0);
    for (int idx = 0; idx < t.complex().cells(3); ++idx) {
        CubicalTorus::Cell cell = t.cell(3, idx);
        if (cell.spanned != normal) continue;
        bool crossing = true;
        for (int axis = 1; axis <= t.dimension(); ++axis)
            if ((normal & axis_mask(axis)) &&
                cell.position[static_cast<std::size_t>(axis - 1)] !=
                    offsets[static_cast<std::size_t>(axis - 1)])
                crossing = false;
        if (crossing) c.values[static_cast<std::size_t>(idx)] = 1;
    }
    if (!is_cocycle(t.complex(), c))
        throw InternalError("pd_cocycle: dual cochain failed the cocycle check");
    return make_gerbe_class(t, std::move(c));
}

} // namespace g2forge
