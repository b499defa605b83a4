#pragma once

/// Symbolic Chern-Weil bookkeeping on an oriented Riemannian 4-manifold.
///
/// Curvature entries of the tangent connection are commuting symbols W_ij
/// (2-forms commute under wedge), the factor 1/4pi^2 is a formal unit, and
/// every density below is an exact polynomial. The induced curvature on the
/// (anti-)self-dual 2-forms is derived from the tangent matrix rather than
/// transcribed, so the adjunction identity
///     p1(bundle of ASD forms) = p1(tangent) - 2 * euler
/// is an honest polynomial computation. Together with the signature theorem
/// it yields the integer pairing 6*tau - 2*chi evaluated on concrete
/// 4-manifolds via exact Sylvester inertia of the intersection form.

#include <g2forge/form.hpp>
#include <g2forge/linalg.hpp>
#include <g2forge/rational.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2forge {

/// Polynomial in the six curvature symbols W01..W23 and the formal unit
/// u = 1/4pi^2. Products whose symbol degree exceeds 2 are 6-forms on a
/// 4-manifold and are rejected.
class CurvPoly {
public:
    // exponents of W01, W02, W03, W12, W13, W23, u
    using Mono = std::array<std::uint8_t, 7>;

    static constexpr std::array<const char*, 6> kSymbolNames = {"W01", "W02", "W03",
                                                                "W12", "W13", "W23"};

    CurvPoly() = default;

    static CurvPoly constant(Rational c) {
        CurvPoly p;
        p.add(Mono{}, std::move(c));
        return p;
    }

    /// W_ij for frame indices 0..3; the antisymmetric partner is returned
    /// with its sign resolved, so only i<j symbols ever exist.
    static CurvPoly symbol(int i, int j) {
        if (i == j || i < 0 || j < 0 || i > 3 || j > 3)
            throw std::invalid_argument("CurvPoly::symbol: indices must be distinct in 0..3");
        bool flip = i > j;
        if (flip) std::swap(i, j);
        static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        Mono m{};
        m[idx[i][j]] = 1;
        CurvPoly p;
        p.add(m, flip ? -1 : 1);
        return p;
    }

    static CurvPoly unit() {
        Mono m{};
        m[6] = 1;
        CurvPoly p;
        p.add(m, 1);
        return p;
    }

    const std::map<Mono, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static int symbol_degree(const Mono& m) {
        int d = 0;
        for (int i = 0; i < 6; ++i) d += m[i];
        return d;
    }

    CurvPoly& add(const Mono& m, Rational c) {
        if (c == 0) return *this;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
        return *this;
    }

    CurvPoly& operator+=(const CurvPoly& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    CurvPoly& operator-=(const CurvPoly& o) {
        for (const auto& [m, c] : o.terms_) add(m, -c);
        return *this;
    }
    friend CurvPoly operator+(CurvPoly a, const CurvPoly& b) { return a += b; }
    friend CurvPoly operator-(CurvPoly a, const CurvPoly& b) { return a -= b; }
    friend CurvPoly operator-(CurvPoly a) {
        for (auto& [m, c] : a.terms_) c = -c;
        return a;
    }
    friend CurvPoly operator*(CurvPoly a, const Rational& s) {
        if (s == 0) return CurvPoly();
        for (auto& [m, c] : a.terms_) c *= s;
        return a;
    }
    friend CurvPoly operator*(const Rational& s, CurvPoly a) { return std::move(a) * s; }

    friend CurvPoly operator*(const CurvPoly& a, const CurvPoly& b) {
        CurvPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Mono m;
                for (int i = 0; i < 7; ++i) m[i] = static_cast<std::uint8_t>(ma[i] + mb[i]);
                if (symbol_degree(m) > 2)
                    throw std::domain_error("CurvPoly: product exceeds the top form degree");
                out.add(m, ca * cb);
            }
        return out;
    }

    friend bool operator==(const CurvPoly& a, const CurvPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const CurvPoly& a, const CurvPoly& b) { return !(a == b); }

    /// Flip the sign of every curvature symbol (u untouched).
    CurvPoly negate_symbols() const {
        CurvPoly out;
        for (const auto& [m, c] : terms_)
            out.add(m, symbol_degree(m) % 2 ? -c : c);
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            std::string mono;
            if (m[6] > 0) mono += (m[6] == 1) ? "u" : ("u^" + std::to_string(m[6]));
            for (int i = 0; i < 6; ++i) {
                if (m[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += kSymbolNames[i];
                if (m[i] > 1) mono += "^" + std::to_string(m[i]);
            }
            out += mono.empty() ? c.str() : (c == 1 ? mono : "(" + c.str() + ")*" + mono);
        }
        return out;
    }

private:
    std::map<Mono, Rational> terms_;
};

using CurvMatrix = std::vector<std::vector<CurvPoly>>;

inline bool is_antisymmetric(const CurvMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != -m[j][i]) return false;
    return true;
}

/// Curvature of the tangent connection: R[i][j] = W_ij.
inline CurvMatrix so4_curvature_matrix() {
    CurvMatrix m(4, std::vector<CurvPoly>(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) m[i][j] = CurvPoly::symbol(i, j);
    return m;
}

namespace cwdetail {

// a 2-vector with polynomial coefficients, keyed by frame pairs a<b
using PolyTwoVector = std::map<std::pair<int, int>, CurvPoly>;

inline void add_term(PolyTwoVector& v, int a, int b, const CurvPoly& c) {
    if (a == b) return;
    CurvPoly adj = c;
    if (a > b) {
        std::swap(a, b);
        adj = -adj;
    }
    auto [it, inserted] = v.try_emplace({a, b}, adj);
    if (!inserted) it->second += adj;
}

// derivative action of an so(4)-valued curvature on e_a ^ e_b
inline PolyTwoVector act(const CurvMatrix& m, int a, int b) {
    PolyTwoVector out;
    for (int c = 0; c < 4; ++c) {
        add_term(out, c, b, m[c][a]);
        add_term(out, a, c, m[c][b]);
    }
    return out;
}

} // namespace cwdetail

/// A rational-coefficient 2-vector basis element, e.g. e01 - e23.
using TwoVectorBasis = std::vector<std::map<std::pair<int, int>, Rational>>;

inline TwoVectorBasis asd_basis() {
    return {{{{0, 1}, 1}, {{2, 3}, -1}}, {{{0, 2}, 1}, {{1, 3}, 1}}, {{{0, 3}, 1}, {{1, 2}, -1}}};
}

inline TwoVectorBasis sd_basis() {
    return {{{{0, 1}, 1}, {{2, 3}, 1}}, {{{0, 2}, 1}, {{1, 3}, -1}}, {{{0, 3}, 1}, {{1, 2}, 1}}};
}

/// Curvature matrix induced on an invariant subspace of the 2-vectors.
/// Throws when the span is not preserved, which catches transcription bugs
/// in either the basis or the tangent matrix.
inline CurvMatrix induced_curvature_matrix(const CurvMatrix& tangent, const TwoVectorBasis& basis) {
    if (!is_antisymmetric(tangent))
        throw std::invalid_argument("induced_curvature_matrix: tangent matrix not antisymmetric");
    const std::size_t n = basis.size();
    CurvMatrix out(n, std::vector<CurvPoly>(n));
    for (std::size_t j = 0; j < n; ++j) {
        cwdetail::PolyTwoVector image;
        for (const auto& [pair_ab, r] : basis[j]) {
            auto acted = cwdetail::act(tangent, pair_ab.first, pair_ab.second);
            for (const auto& [key, poly] : acted) {
                auto [it, inserted] = image.try_emplace(key, poly * r);
                if (!inserted) it->second += poly * r;
            }
        }
        // expand over the (orthogonal) basis and demand exact reconstruction
        cwdetail::PolyTwoVector reconstructed;
        for (std::size_t i = 0; i < n; ++i) {
            CurvPoly coeff;
            Rational norm = 0;
            for (const auto& [key, r] : basis[i]) {
                norm += r * r;
                auto it = image.find(key);
                if (it != image.end()) coeff += it->second * r;
            }
            coeff = coeff * (Rational(1) / norm);
            out[i][j] = coeff;
            for (const auto& [key, r] : basis[i]) {
                auto [it, inserted] = reconstructed.try_emplace(key, coeff * r);
                if (!inserted) it->second += coeff * r;
            }
        }
        for (auto& [key, poly] : reconstructed) {
            auto it = image.find(key);
            CurvPoly expect = (it == image.end()) ? CurvPoly() : it->second;
            if (poly != expect)
                throw InternalError(
                    "induced_curvature_matrix: subspace is not curvature-invariant");
        }
        for (const auto& [key, poly] : image)
            if (!reconstructed.count(key) && !poly.is_zero())
                throw InternalError(
                    "induced_curvature_matrix: image leaves the subspace");
    }
    return out;
}

inline CurvMatrix asd_curvature_matrix() {
    return induced_curvature_matrix(so4_curvature_matrix(), asd_basis());
}

inline CurvMatrix sd_curvature_matrix() {
    return induced_curvature_matrix(so4_curvature_matrix(), sd_basis());
}

/// p1 density -(1/8pi^2) tr(M^M) = -(u/2) tr(M M) for commuting entries.
inline CurvPoly p1_density(const CurvMatrix& m) {
    if (!is_antisymmetric(m)) throw std::invalid_argument("p1_density: matrix not antisymmetric");
    CurvPoly tr;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t c = 0; c < m.size(); ++c) tr += m[i][c] * m[c][i];
    return CurvPoly::unit() * tr * Rational(-1, 2);
}

/// Pfaffian of a 4x4 antisymmetric polynomial matrix.
inline CurvPoly pfaffian4(const CurvMatrix& m) {
    if (m.size() != 4 || !is_antisymmetric(m))
        throw std::invalid_argument("pfaffian4: need a 4x4 antisymmetric matrix");
    return m[0][1] * m[2][3] - m[0][2] * m[1][3] + m[0][3] * m[1][2];
}

/// Euler density (1/4pi^2) Pf(R) of the tangent curvature.
inline CurvPoly euler_density() { return CurvPoly::unit() * pfaffian4(so4_curvature_matrix()); }

struct AdjunctionReport {
    bool pass = false;
    CurvPoly residual_asd;    // p1(ASD bundle) - p1(tangent) + 2 euler
    CurvPoly residual_sd;     // p1(SD bundle)  - p1(tangent) - 2 euler
    CurvPoly trace_residual;  // p1(SD) + p1(ASD) - 2 p1(tangent)
    bool sign_flip_invariant = false;
    // pairing of the restricted p1 against tau and chi: value = a*tau + b*chi
    std::pair<long long, long long> coefficients_asd{0, 0};  // expected (6, -2)
    std::pair<long long, long long> coefficients_sd{0, 0};   // expected (6, +2)
};

namespace cwdetail {

/// Express `target` as x*p + y*q by exact monomial matching.
inline std::pair<Rational, Rational> in_span(const CurvPoly& target, const CurvPoly& p,
                                             const CurvPoly& q) {
    std::map<CurvPoly::Mono, std::array<Rational, 3>> rows;
    for (const auto& [m, c] : p.terms()) rows[m][0] = c;
    for (const auto& [m, c] : q.terms()) rows[m][1] = c;
    for (const auto& [m, c] : target.terms()) rows[m][2] = c;
    RatMat a;
    RatVec b;
    for (const auto& [m, r] : rows) {
        a.push_back({r[0], r[1]});
        b.push_back(r[2]);
    }
    RatVec x;
    if (!solve_linear(a, b, x))
        throw InternalError("in_span: target outside the span of p1 and euler densities");
    return {x[0], x[1]};
}

} // namespace cwdetail

/// Verify p1(ASD bundle) = p1(tangent) - 2 euler as literal polynomials and
/// derive the integer pairing coefficients: adding p1(tangent) to both sides
/// and applying the signature theorem (integral of p1 = 3 tau) turns the
/// total restricted p1 into 6 tau - 2 chi; the self-dual bundle mirrors the
/// euler sign.
inline AdjunctionReport verify_adjunction_identity() {
    AdjunctionReport rep;
    CurvPoly p1 = p1_density(so4_curvature_matrix());
    CurvPoly p1_asd = p1_density(asd_curvature_matrix());
    CurvPoly p1_sd = p1_density(sd_curvature_matrix());
    CurvPoly chi = euler_density();

    rep.residual_asd = p1_asd - p1 + chi * Rational(2);
    rep.residual_sd = p1_sd - p1 - chi * Rational(2);
    rep.trace_residual = p1_sd + p1_asd - p1 * Rational(2);
    rep.sign_flip_invariant = rep.residual_asd.negate_symbols() == rep.residual_asd &&
                              p1.negate_symbols() == p1 && chi.negate_symbols() == chi;

    auto derive = [&](const CurvPoly& restricted) {
        auto [x, y] = cwdetail::in_span(restricted, p1, chi);
        // integral of p1 equals 3 tau, of the euler density equals chi
        Rational tau_coeff = 3 * x;
        if (!is_integer(tau_coeff) || !is_integer(y))
            throw InternalError("verify_adjunction_identity: non-integer pairing");
        return std::pair<long long, long long>{
            static_cast<long long>(numerator(tau_coeff).convert_to<long long>()),
            static_cast<long long>(numerator(y).convert_to<long long>())};
    };
    rep.coefficients_asd = derive(p1 + p1_asd);
    rep.coefficients_sd = derive(p1 + p1_sd);

    rep.pass = rep.residual_asd.is_zero() && rep.residual_sd.is_zero() &&
               rep.trace_residual.is_zero() && rep.sign_flip_invariant;
    if (!rep.residual_asd.is_zero())
        throw InternalError("verify_adjunction_identity: residual polynomial nonzero");
    return rep;
}

/// Topological data of a closed oriented 4-manifold.
struct FourManifold {
    std::string name;
    std::array<long long, 5> betti{};
    std::vector<std::vector<long long>> intersection;

    void validate() const {
        if (betti[0] != betti[4] || betti[1] != betti[3])
            throw std::invalid_argument(name + ": Betti numbers violate duality");
        if (intersection.size() != static_cast<std::size_t>(betti[2]))
            throw std::invalid_argument(name + ": intersection size does not match b2");
        for (const auto& row : intersection)
            if (row.size() != intersection.size())
                throw std::invalid_argument(name + ": intersection matrix not square");
        for (std::size_t i = 0; i < intersection.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (intersection[i][j] != intersection[j][i])
                    throw std::invalid_argument(name + ": intersection matrix not symmetric");
        if (!intersection.empty()) {
            RatMat m(intersection.size(), RatVec(intersection.size()));
            for (std::size_t i = 0; i < intersection.size(); ++i)
                for (std::size_t j = 0; j < intersection.size(); ++j)
                    m[i][j] = intersection[i][j];
            Rational det = determinant(m);
            if (det != 1 && det != -1)
                throw std::invalid_argument(name + ": intersection form is not unimodular");
        }
    }
};

inline int signature(const FourManifold& m) {
    m.validate();
    RatMat q(m.intersection.size(), RatVec(m.intersection.size()));
    for (std::size_t i = 0; i < m.intersection.size(); ++i)
        for (std::size_t j = 0; j < m.intersection.size(); ++j) q[i][j] = m.intersection[i][j];
    return symmetric_inertia(q).signature();
}

inline long long euler_char(const FourManifold& m) {
    return m.betti[0] - m.betti[1] + m.betti[2] - m.betti[3] + m.betti[4];
}

enum class Trichotomy { positive, zero, negative };

inline std::string to_string(Trichotomy t) {
    switch (t) {
        case Trichotomy::positive: return "positive";
        case Trichotomy::zero: return "zero";
        case Trichotomy::negative: return "negative";
    }
    return "?";
}

struct PairingReport {
    std::string name;
    int tau = 0;
    long long chi = 0;
    long long value = 0;  // 6 tau - 2 chi
    Trichotomy classification = Trichotomy::zero;
    std::string tau_vs_chi;
    std::vector<std::string> notes;
};

/// Evaluate 6 tau - 2 chi and report the trichotomy together with the
/// equivalent comparison of tau against chi/3.
inline PairingReport pairing(const FourManifold& m) {
    PairingReport rep;
    rep.name = m.name;
    rep.tau = signature(m);
    rep.chi = euler_char(m);
    rep.value = 6LL * rep.tau - 2LL * rep.chi;
    if (rep.value > 0) {
        rep.classification = Trichotomy::positive;
        rep.tau_vs_chi = "tau > chi/3";
    } else if (rep.value == 0) {
        rep.classification = Trichotomy::zero;
        rep.tau_vs_chi = "tau = chi/3";
    } else {
        rep.classification = Trichotomy::negative;
        rep.tau_vs_chi = "tau < chi/3";
    }
    bool torus_betti = m.betti == std::array<long long, 5>{1, 4, 6, 4, 1};
    if (rep.classification == Trichotomy::zero && torus_betti)
        rep.notes.push_back(
            "flat 4-torus: any calibrated embedding represents a class with zero pairing, so an "
            "ambient space with third Betti number 1 admits no such embedding");
    if (rep.classification == Trichotomy::negative)
        rep.notes.push_back(
            "negative pairing: the class of the tangent p1 admits no volume-calibrated "
            "3-dimensional representative, whose volume would equal a negative number");
    return rep;
}

inline std::vector<std::vector<long long>> hyperbolic_blocks(int count) {
    std::vector<std::vector<long long>> m(2 * count, std::vector<long long>(2 * count, 0));
    for (int b = 0; b < count; ++b) {
        m[2 * b][2 * b + 1] = 1;
        m[2 * b + 1][2 * b] = 1;
    }
    return m;
}

/// Cartan matrix of E8 (Bourbaki numbering), positive definite with
/// determinant 1.
inline std::vector<std::vector<long long>> e8_cartan_matrix() {
    std::vector<std::vector<long long>> c(8, std::vector<long long>(8, 0));
    for (int i = 0; i < 8; ++i) c[i][i] = 2;
    auto link = [&](int a, int b) { c[a - 1][b - 1] = c[b - 1][a - 1] = -1; };
    link(1, 3);
    link(3, 4);
    link(2, 4);
    link(4, 5);
    link(5, 6);
    link(6, 7);
    link(7, 8);
    return c;
}

inline std::vector<FourManifold> builtin_catalog() {
    std::vector<FourManifold> out;
    out.push_back({"T4", {1, 4, 6, 4, 1}, hyperbolic_blocks(3)});
    out.push_back({"S4", {1, 0, 0, 0, 1}, {}});
    out.push_back({"CP2", {1, 0, 1, 0, 1}, {{1}}});
    out.push_back({"CP2-reversed", {1, 0, 1, 0, 1}, {{-1}}});
    out.push_back({"S2xS2", {1, 0, 2, 0, 1}, hyperbolic_blocks(1)});

    // K3: three hyperbolic planes plus two negative E8 blocks
    std::vector<std::vector<long long>> k3(22, std::vector<long long>(22, 0));
    auto hyp = hyperbolic_blocks(3);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) k3[i][j] = hyp[i][j];
    auto e8 = e8_cartan_matrix();
    for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) k3[6 + 8 * b + i][6 + 8 * b + j] = -e8[i][j];
    out.push_back({"K3", {1, 0, 22, 0, 1}, std::move(k3)});

    for (const auto& m : out) m.validate();
    return out;
}

} // namespace g2forge
