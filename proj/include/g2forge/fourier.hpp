#pragma once

/// Truncated Fourier calculus for differential forms on the flat torus
/// (R/Z)^7. A field is a finite map from integer wavevectors to constant
/// complex-coefficient forms; d, d*, the Laplacian, and the Hodge star act
/// mode by mode through exact linear algebra on the coefficients, so the
/// only approximation in the whole layer is the truncation itself.

#include <g2forge/form.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2forge {

using CScalar = std::complex<double>;
using WaveVector = std::array<int, 7>;

inline WaveVector operator-(const WaveVector& k) {
    WaveVector out{};
    for (std::size_t i = 0; i < 7; ++i) out[i] = -k[i];
    return out;
}

inline WaveVector operator+(const WaveVector& a, const WaveVector& b) {
    WaveVector out{};
    for (std::size_t i = 0; i < 7; ++i) out[i] = a[i] + b[i];
    return out;
}

inline long long norm_squared(const WaveVector& k) {
    long long acc = 0;
    for (int v : k) acc += static_cast<long long>(v) * v;
    return acc;
}

inline int sup_norm(const WaveVector& k) {
    int acc = 0;
    for (int v : k) acc = std::max(acc, std::abs(v));
    return acc;
}

inline bool is_zero(const WaveVector& k) { return norm_squared(k) == 0; }

/// Constant-coefficient exterior form with complex scalars; the per-mode
/// coefficient of a Fourier field. Mirrors the rational Form but never
/// normalizes away rounding noise: only exact zeros are pruned.
class CForm {
public:
    CForm() = default;

    static CForm monomial(Mask m, CScalar c = 1.0) {
        CForm f;
        f.add(m, c);
        return f;
    }

    static CForm from_real(const Form& f) {
        CForm out;
        for (const auto& [m, c] : f.components()) out.add(m, CScalar(to_double(c), 0.0));
        return out;
    }

    const std::map<Mask, CScalar>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }

    CScalar coeff(Mask m) const {
        auto it = comps_.find(m);
        return it == comps_.end() ? CScalar(0.0) : it->second;
    }

    bool has_degree(int k) const {
        for (const auto& [m, c] : comps_)
            if (mask_degree(m) != k) return false;
        return true;
    }

    CForm& add(Mask m, CScalar c) {
        if (c == CScalar(0.0)) return *this;
        auto it = comps_.find(m);
        if (it == comps_.end()) {
            comps_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == CScalar(0.0)) comps_.erase(it);
        }
        return *this;
    }

    CForm& operator+=(const CForm& o) {
        for (const auto& [m, c] : o.comps_) add(m, c);
        return *this;
    }
    CForm& operator-=(const CForm& o) {
        for (const auto& [m, c] : o.comps_) add(m, -c);
        return *this;
    }
    friend CForm operator+(CForm a, const CForm& b) { return a += b; }
    friend CForm operator-(CForm a, const CForm& b) { return a -= b; }
    friend CForm operator*(CForm a, CScalar s) {
        if (s == CScalar(0.0)) return CForm();
        for (auto& [m, c] : a.comps_) c *= s;
        return a;
    }
    friend CForm operator*(CScalar s, CForm a) { return std::move(a) * s; }

    CForm conjugate() const {
        CForm out;
        for (const auto& [m, c] : comps_) out.add(m, std::conj(c));
        return out;
    }

    double norm_squared() const {
        double acc = 0;
        for (const auto& [m, c] : comps_) acc += std::norm(c);
        return acc;
    }

    /// Bilinear pairing with a rational form over the orthonormal blades.
    CScalar pair(const Form& f) const {
        CScalar acc = 0;
        for (const auto& [m, c] : f.components()) acc += coeff(m) * to_double(c);
        return acc;
    }

private:
    std::map<Mask, CScalar> comps_;
};

inline CForm wedge(const CForm& a, const CForm& b) {
    CForm out;
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            int s = wedge_sign(ma, mb);
            if (s != 0) out.add(static_cast<Mask>(ma | mb), ca * cb * static_cast<double>(s));
        }
    return out;
}

inline CForm hodge(const CForm& a) {
    CForm out;
    for (const auto& [m, c] : a.components())
        out.add(mask_complement(m), c * static_cast<double>(star_sign(m)));
    return out;
}

/// Interior product with the lattice vector kappa (indices raised by the
/// flat metric).
inline CForm contract(const WaveVector& kappa, const CForm& a) {
    CForm out;
    for (int axis = 1; axis <= kDim; ++axis) {
        int kv = kappa[static_cast<std::size_t>(axis - 1)];
        if (kv == 0) continue;
        Mask am = axis_mask(axis);
        for (const auto& [m, c] : a.components()) {
            if (!(m & am)) continue;
            int below = mask_degree(static_cast<Mask>(m & (am - 1)));
            double sign = (below % 2 == 0) ? 1.0 : -1.0;
            out.add(static_cast<Mask>(m & ~am), c * (sign * kv));
        }
    }
    return out;
}

/// Wedge by the lattice covector kappa.
inline CForm wedge(const WaveVector& kappa, const CForm& a) {
    CForm out;
    for (int axis = 1; axis <= kDim; ++axis) {
        int kv = kappa[static_cast<std::size_t>(axis - 1)];
        if (kv == 0) continue;
        Mask am = axis_mask(axis);
        for (const auto& [m, c] : a.components()) {
            int s = wedge_sign(am, m);
            if (s != 0) out.add(static_cast<Mask>(am | m), c * (static_cast<double>(s) * kv));
        }
    }
    return out;
}

/// Thrown when a Poisson problem has a nonvanishing constant mode; carries
/// the norm of the obstructing mode.
struct ObstructionError : std::runtime_error {
    explicit ObstructionError(double norm)
        : std::runtime_error("constant-mode obstruction of norm " + std::to_string(norm)),
          obstruction_norm(norm) {}
    double obstruction_norm;
};

/// Finite Fourier series of a degree-k form: wavevectors within the sup-norm
/// truncation bound mapping to complex coefficient forms. The realness flag
/// asserts that the coefficient at -k is the conjugate of the one at k; it
/// survives the real-linear operations and is dropped by raw mode writes
/// until re-asserted.
class FourierForm {
public:
    FourierForm(int degree, int truncation)
        : degree_(degree), truncation_(truncation) {
        if (degree_ < 0 || degree_ > kDim)
            throw std::invalid_argument("FourierForm: degree out of range");
        if (truncation_ < 0) throw std::invalid_argument("FourierForm: negative truncation");
    }

    /// Constant (mode-zero) field from a homogeneous rational form.
    static FourierForm constant(const Form& f, int truncation) {
        if (!f.homogeneous())
            throw std::invalid_argument("FourierForm::constant: form must be homogeneous");
        int deg = f.degree() < 0 ? 0 : f.degree();
        FourierForm out(deg, truncation);
        if (!f.is_zero()) out.modes_.emplace(WaveVector{}, CForm::from_real(f));
        return out;
    }

    int degree() const { return degree_; }
    int truncation() const { return truncation_; }
    bool is_real() const { return real_; }
    const std::map<WaveVector, CForm>& modes() const { return modes_; }

    CForm mode(const WaveVector& k) const {
        auto it = modes_.find(k);
        return it == modes_.end() ? CForm() : it->second;
    }

    void set_mode(const WaveVector& k, CForm c) {
        if (sup_norm(k) > truncation_)
            throw std::invalid_argument("FourierForm::set_mode: wavevector beyond truncation");
        if (!c.has_degree(degree_))
            throw std::invalid_argument("FourierForm::set_mode: coefficient degree mismatch");
        real_ = false;
        if (c.empty())
            modes_.erase(k);
        else
            modes_[k] = std::move(c);
    }

    /// Verify the conjugate-pairing invariant and set the realness flag.
    bool assert_real(double tol = 1e-12) {
        for (const auto& [k, c] : modes_) {
            CForm diff = mode(-k) - c.conjugate();
            if (std::sqrt(diff.norm_squared()) > tol) return false;
        }
        real_ = true;
        return true;
    }

    FourierForm& operator+=(const FourierForm& o) {
        if (degree_ != o.degree_)
            throw std::invalid_argument("FourierForm: degree mismatch in addition");
        truncation_ = std::max(truncation_, o.truncation_);
        for (const auto& [k, c] : o.modes_) {
            auto it = modes_.find(k);
            if (it == modes_.end()) {
                modes_.emplace(k, c);
            } else {
                it->second += c;
                if (it->second.empty()) modes_.erase(it);
            }
        }
        real_ = real_ && o.real_;
        return *this;
    }
    friend FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
    friend FourierForm operator-(FourierForm a, const FourierForm& b) {
        return a += b * CScalar(-1.0);
    }
    friend FourierForm operator*(FourierForm a, CScalar s) {
        if (s == CScalar(0.0)) {
            a.modes_.clear();
            return a;
        }
        for (auto& [k, c] : a.modes_) c = c * s;
        a.real_ = a.real_ && (s.imag() == 0.0);
        return a;
    }
    friend FourierForm operator*(CScalar s, FourierForm a) { return std::move(a) * s; }

    double norm_squared() const {
        double acc = 0;
        for (const auto& [k, c] : modes_) acc += c.norm_squared();
        return acc;
    }

    bool is_zero() const { return modes_.empty(); }

private:
    friend FourierForm map_modes(const FourierForm&, int,
                                 const std::function<CForm(const WaveVector&, const CForm&)>&);
    friend FourierForm wedge(const FourierForm&, const FourierForm&, double*);

    int degree_;
    int truncation_;
    bool real_ = true;  // vacuous until modes are written
    std::map<WaveVector, CForm> modes_;
};

/// Apply a per-mode linear map, keeping the realness flag when the map
/// commutes with conjugation (all maps in this header do).
inline FourierForm map_modes(const FourierForm& f, int out_degree,
                             const std::function<CForm(const WaveVector&, const CForm&)>& fn) {
    FourierForm out(out_degree, f.truncation());
    for (const auto& [k, c] : f.modes()) {
        CForm mapped = fn(k, c);
        if (!mapped.empty()) out.modes_.emplace(k, std::move(mapped));
    }
    out.real_ = f.is_real();
    return out;
}

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Exterior derivative: mode k picks up 2*pi*i k /\ .
inline FourierForm d(const FourierForm& f) {
    int out_degree = std::min(f.degree() + 1, kDim);
    return map_modes(f, out_degree, [](const WaveVector& k, const CForm& c) {
        return wedge(k, c) * CScalar(0.0, kTwoPi);
    });
}

/// Codifferential: mode k picks up -2*pi*i contraction with k.
inline FourierForm dstar(const FourierForm& f) {
    int out_degree = std::max(f.degree() - 1, 0);
    return map_modes(f, out_degree, [](const WaveVector& k, const CForm& c) {
        return contract(k, c) * CScalar(0.0, -kTwoPi);
    });
}

/// Hodge Laplacian: the scalar 4*pi^2 |k|^2 per mode.
inline FourierForm laplacian(const FourierForm& f) {
    return map_modes(f, f.degree(), [](const WaveVector& k, const CForm& c) {
        return c * CScalar(kTwoPi * kTwoPi * static_cast<double>(norm_squared(k)), 0.0);
    });
}

inline FourierForm hodge(const FourierForm& f) {
    return map_modes(f, kDim - f.degree(),
                     [](const WaveVector&, const CForm& c) { return hodge(c); });
}

/// Hermitian L2 inner product under the mode-sum normalization.
inline CScalar l2_inner(const FourierForm& a, const FourierForm& b) {
    CScalar acc = 0;
    for (const auto& [k, c] : a.modes()) {
        CForm other = b.mode(k);
        for (const auto& [m, v] : c.components()) acc += v * std::conj(other.coeff(m));
    }
    return acc;
}

inline double l2_norm(const FourierForm& f) { return std::sqrt(f.norm_squared()); }

/// Mode convolution. Products escaping the truncation of the result are
/// dropped; their accumulated norm is reported through `dropped_norm`.
inline FourierForm wedge(const FourierForm& a, const FourierForm& b,
                         double* dropped_norm = nullptr) {
    if (a.degree() + b.degree() > kDim)
        throw std::invalid_argument("wedge: degree exceeds the ambient dimension");
    FourierForm out(a.degree() + b.degree(), std::max(a.truncation(), b.truncation()));
    std::map<WaveVector, CForm> dropped;
    for (const auto& [ka, ca] : a.modes())
        for (const auto& [kb, cb] : b.modes()) {
            CForm w = wedge(ca, cb);
            if (w.empty()) continue;
            WaveVector k = ka + kb;
            auto& bucket = (sup_norm(k) <= out.truncation()) ? out.modes_ : dropped;
            auto it = bucket.find(k);
            if (it == bucket.end()) {
                bucket.emplace(k, std::move(w));
            } else {
                it->second += w;
                if (it->second.empty()) bucket.erase(it);
            }
        }
    if (dropped_norm) {
        double acc = 0;
        for (const auto& [k, c] : dropped) acc += c.norm_squared();
        *dropped_norm = std::sqrt(acc);
    }
    out.real_ = a.is_real() && b.is_real();
    return out;
}

/// Unique zero-mean solution of (Laplacian u) = f; the constant mode is the
/// solvability obstruction.
inline FourierForm solve_poisson(const FourierForm& f, double tol = 1e-12) {
    double obstruction = std::sqrt(f.mode(WaveVector{}).norm_squared());
    if (obstruction > tol) throw ObstructionError(obstruction);
    return map_modes(f, f.degree(), [](const WaveVector& k, const CForm& c) {
        if (is_zero(k)) return CForm();  // residual rounding mass below tol
        return c * CScalar(1.0 / (kTwoPi * kTwoPi * static_cast<double>(norm_squared(k))), 0.0);
    });
}

/// Pointwise evaluation of the trigonometric polynomial.
inline CForm evaluate(const FourierForm& f, const std::array<double, 7>& x) {
    CForm acc;
    for (const auto& [k, c] : f.modes()) {
        double phase = 0;
        for (std::size_t i = 0; i < 7; ++i) phase += k[i] * x[i];
        acc += c * std::polar(1.0, kTwoPi * phase);
    }
    return acc;
}

/// Regular sampling grid: points[a] samples along axis a starting at
/// base[a] with spacing 1/points[a]; an axis with a single point stays
/// fixed at its base value.
struct GridSpec {
    std::array<int, 7> points{1, 1, 1, 1, 1, 1, 1};
    std::array<double, 7> base{};
};

struct SampleRow {
    std::array<double, 7> x{};
    Mask blade = 0;
    CScalar value = 0;
};

inline std::vector<SampleRow> sample(const FourierForm& f, const GridSpec& grid) {
    for (int p : grid.points)
        if (p < 1) throw std::invalid_argument("sample: need at least one point per axis");
    std::vector<SampleRow> rows;
    std::array<int, 7> idx{};
    while (true) {
        std::array<double, 7> x{};
        for (std::size_t i = 0; i < 7; ++i)
            x[i] = grid.base[i] + static_cast<double>(idx[i]) / grid.points[i];
        CForm value = evaluate(f, x);
        for (const auto& [m, c] : value.components()) rows.push_back({x, m, c});
        std::size_t axis = 0;
        while (axis < 7 && ++idx[axis] == grid.points[axis]) idx[axis++] = 0;
        if (axis == 7) break;
    }
    return rows;
}

} // namespace g2forge
