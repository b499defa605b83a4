#pragma once

/// Exact exterior algebra on R^7 with the Euclidean metric and the standard
/// orientation e1^...^e7. Monomials are indexed by 7-bit masks (bit i-1 set
/// means axis i participates), coefficients are arbitrary-precision rationals,
/// so every identity in this header is decidable exactly.

#include <g2forge/rational.hpp>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2forge {

using Mask = std::uint8_t;

/// Raised when an exact computation contradicts a structural expectation
/// (broken Hodge data, non-invariant subspace, failed polynomial identity).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

inline constexpr Mask kFullMask = 0x7f; // all seven axes
inline constexpr int kDim = 7;

inline int mask_degree(Mask m) { return std::popcount(static_cast<unsigned>(m)); }

inline Mask mask_complement(Mask m) { return static_cast<Mask>(kFullMask & ~m); }

inline Mask axis_mask(int axis) {
    if (axis < 1 || axis > kDim) throw std::out_of_range("axis must be in 1..7");
    return static_cast<Mask>(1u << (axis - 1));
}

inline Mask axes_mask(std::initializer_list<int> axes) {
    Mask m = 0;
    for (int a : axes) {
        Mask bit = axis_mask(a);
        if (m & bit) throw std::invalid_argument("repeated axis");
        m |= bit;
    }
    return m;
}

inline std::vector<int> mask_axes(Mask m) {
    std::vector<int> out;
    for (int i = 1; i <= kDim; ++i)
        if (m & axis_mask(i)) out.push_back(i);
    return out;
}

/// Sign of e^A ^ e^B = sign * e^{A|B} for disjoint sorted index blocks,
/// 0 when the blocks share an axis. The sign counts the transpositions
/// needed to interleave B into A.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int sign = 1;
    unsigned rest = a;
    for (int i = 0; i < kDim; ++i) {
        unsigned bit = 1u << i;
        if (!(b & bit)) continue;
        // axes of a strictly above axis i+1 must jump over it
        unsigned higher = rest & ~((bit << 1) - 1u);
        if (std::popcount(higher) & 1) sign = -sign;
    }
    return sign;
}

/// Sign s with e^I ^ (s * e^{I^c}) = e^{1...7}; defines *e^I = s e^{I^c}.
inline int star_sign(Mask m) {
    int s = wedge_sign(m, mask_complement(m));
    return s; // never 0: complement is disjoint by construction
}

inline std::string blade_name(Mask m) {
    if (m == 0) return "1";
    std::string s = "e";
    for (int a : mask_axes(m)) s += static_cast<char>('0' + a);
    return s;
}

enum class Convention {
    standard, // e123 + e145 - e167 + e246 + e257 + e347 - e356
    alt,      // e123 + e145 + e167 + e246 - e257 - e347 - e356 (opposite chirality)
};

/// A (possibly inhomogeneous) exterior form with exact rational coefficients.
/// Zero coefficients are never stored, so equality is structural.
class Form {
public:
    Form() = default;

    static Form monomial(Mask m, Rational c = 1) {
        Form f;
        f.add(m, std::move(c));
        return f;
    }

    static Form scalar(Rational c) { return monomial(0, std::move(c)); }

    const std::map<Mask, Rational>& components() const { return comps_; }

    bool is_zero() const { return comps_.empty(); }

    /// True when every stored monomial has the given degree (vacuously true
    /// for the zero form, which belongs to every graded piece).
    bool has_degree(int k) const {
        for (const auto& [m, c] : comps_)
            if (mask_degree(m) != k) return false;
        return true;
    }

    bool homogeneous() const {
        if (comps_.empty()) return true;
        return has_degree(mask_degree(comps_.begin()->first));
    }

    /// Degree of a homogeneous nonzero form; -1 for the zero form.
    int degree() const {
        if (comps_.empty()) return -1;
        int k = mask_degree(comps_.begin()->first);
        if (!has_degree(k)) throw std::logic_error("degree() on mixed-degree form");
        return k;
    }

    Rational coeff(Mask m) const {
        auto it = comps_.find(m);
        return it == comps_.end() ? Rational(0) : it->second;
    }

    Form& add(Mask m, Rational c) {
        if (c == 0) return *this;
        auto it = comps_.find(m);
        if (it == comps_.end()) {
            comps_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) comps_.erase(it);
        }
        return *this;
    }

    Form& operator+=(const Form& o) {
        for (const auto& [m, c] : o.comps_) add(m, c);
        return *this;
    }

    Form& operator-=(const Form& o) {
        for (const auto& [m, c] : o.comps_) add(m, -c);
        return *this;
    }

    Form& operator*=(const Rational& s) {
        if (s == 0) {
            comps_.clear();
            return *this;
        }
        for (auto& [m, c] : comps_) c *= s;
        return *this;
    }

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(Form a) {
        for (auto& [m, c] : a.comps_) c = -c;
        return a;
    }
    friend Form operator*(Form a, const Rational& s) { return a *= s; }
    friend Form operator*(const Rational& s, Form a) { return a *= s; }
    friend Form operator/(Form a, const Rational& s) {
        if (s == 0) throw std::invalid_argument("division of form by zero");
        return a *= Rational(1) / s;
    }

    friend bool operator==(const Form& a, const Form& b) { return a.comps_ == b.comps_; }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    std::map<Mask, Rational> comps_;
};

inline Form wedge(const Form& a, const Form& b) {
    Form out;
    for (const auto& [ma, ca] : a.components())
        for (const auto& [mb, cb] : b.components()) {
            int s = wedge_sign(ma, mb);
            if (s != 0) out.add(static_cast<Mask>(ma | mb), s * ca * cb);
        }
    return out;
}

/// Euclidean Hodge star for the orientation e1^...^e7.
inline Form hodge(const Form& a) {
    Form out;
    for (const auto& [m, c] : a.components())
        out.add(mask_complement(m), star_sign(m) * c);
    return out;
}

/// Interior product iota_v a for a vector v given as a 1-form via the metric.
inline Form contract(const Form& v, const Form& a) {
    if (!v.has_degree(1)) throw std::invalid_argument("contract: first argument must be a 1-form");
    Form out;
    for (const auto& [mv, cv] : v.components())
        for (const auto& [ma, ca] : a.components()) {
            if (!(ma & mv)) continue;
            // sign is (-1)^(number of axes of ma below the contracted axis)
            unsigned lower = ma & (mv - 1u);
            int s = (std::popcount(lower) & 1) ? -1 : 1;
            out.add(static_cast<Mask>(ma & ~mv), s * cv * ca);
        }
    return out;
}

/// Pointwise inner product; monomial blades are orthonormal.
inline Rational inner(const Form& a, const Form& b) {
    Rational acc = 0;
    const auto& small = a.components().size() <= b.components().size() ? a : b;
    const auto& large = (&small == &a) ? b : a;
    for (const auto& [m, c] : small.components()) {
        auto it = large.components().find(m);
        if (it != large.components().end()) acc += c * it->second;
    }
    return acc;
}

inline Rational norm_squared(const Form& a) { return inner(a, a); }

inline Form volume_form() { return Form::monomial(kFullMask); }

/// The two sign conventions in circulation. They have opposite chirality:
/// the associated symmetric bilinear form (i_u phi)^(i_v phi)^phi is -6g for
/// `standard` and +6g for `alt`, and the eigenvalues of *(phi ^ .) on
/// 2-forms flip from (-2, +1) to (+2, -1).
inline Form model_phi(Convention conv = Convention::standard) {
    int s = conv == Convention::standard ? 1 : -1;
    Form f;
    f.add(axes_mask({1, 2, 3}), 1);
    f.add(axes_mask({1, 4, 5}), 1);
    f.add(axes_mask({1, 6, 7}), -s);
    f.add(axes_mask({2, 4, 6}), 1);
    f.add(axes_mask({2, 5, 7}), s);
    f.add(axes_mask({3, 4, 7}), s);
    f.add(axes_mask({3, 5, 6}), -1);
    return f;
}

inline Form model_psi(Convention conv = Convention::standard) { return hodge(model_phi(conv)); }

/// Keep only monomials supported inside the given axis set (the pullback of a
/// constant form to the coordinate subspace spanned by those axes).
inline Form restrict_to_axes(const Form& a, Mask axes) {
    Form out;
    for (const auto& [m, c] : a.components())
        if ((m & ~axes) == 0) out.add(m, c);
    return out;
}

/// Hodge star inside a coordinate subspace, oriented by increasing axis order.
/// Every monomial of the input must be supported in `axes`.
inline Form hodge_on_axes(const Form& a, Mask axes) {
    Form out;
    for (const auto& [m, c] : a.components()) {
        if (m & ~axes) throw std::invalid_argument("hodge_on_axes: form not supported in subspace");
        Mask cm = static_cast<Mask>(axes & ~m);
        out.add(cm, wedge_sign(m, cm) * c);
    }
    return out;
}

struct FormParseError : std::runtime_error {
    std::size_t position;
    FormParseError(std::size_t pos, const std::string& what)
        : std::runtime_error("parse error at offset " + std::to_string(pos) + ": " + what),
          position(pos) {}
};

namespace detail {

struct FormParser {
    const std::string& text;
    std::size_t pos = 0;

    explicit FormParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }

    bool eof() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() { return text[pos]; }

    [[noreturn]] void fail(const std::string& what) { throw FormParseError(pos, what); }

    BigInt parse_integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected digits");
        return BigInt(text.substr(start, pos - start));
    }

    // coefficient := integer [ '/' integer ]
    Rational parse_coefficient() {
        BigInt num = parse_integer();
        skip_ws();
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            skip_ws();
            std::size_t dpos = pos;
            BigInt den = parse_integer();
            if (den == 0) throw FormParseError(dpos, "zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    // monomial := 'e' digit+ with digits in 1..7, strictly for the blade;
    // unsorted or repeated axes are rejected rather than normalized so that
    // typos surface instead of silently reordering.
    Mask parse_blade() {
        ++pos; // consume 'e'
        Mask m = 0;
        int prev = 0;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            int axis = text[pos] - '0';
            if (axis < 1 || axis > kDim) fail("axis digit must be 1..7");
            if (axis <= prev) fail(axis == prev ? "repeated axis" : "axes must be increasing");
            m |= axis_mask(axis);
            prev = axis;
            ++pos;
        }
        if (pos == start) fail("expected axis digits after 'e'");
        return m;
    }

    Form parse() {
        Form out;
        if (eof()) fail("empty form expression");
        bool first = true;
        while (!eof()) {
            int sign = 1;
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos;
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            skip_ws();
            if (pos >= text.size()) fail("dangling sign");

            Rational coeff = 1;
            bool have_coeff = false;
            if (peek() >= '0' && peek() <= '9') {
                coeff = parse_coefficient();
                have_coeff = true;
            }
            skip_ws();
            if (pos < text.size() && peek() == '*') {
                if (!have_coeff) fail("'*' without coefficient");
                ++pos;
                skip_ws();
            }
            if (pos < text.size() && peek() == 'e') {
                Mask m = parse_blade();
                out.add(m, sign * coeff);
            } else if (have_coeff) {
                out.add(0, sign * coeff); // bare scalar term
            } else {
                fail("expected coefficient or blade");
            }
            first = false;
        }
        return out;
    }
};

} // namespace detail

/// Grammar: form := ['+'|'-'] term (('+'|'-') term)*
///          term := coefficient ['*'] blade | coefficient | blade
///          coefficient := digits ['/' digits],  blade := 'e' axes, axes increasing in 1..7
/// "0" parses to the zero form.
inline Form parse_form(const std::string& text) {
    // special-case a bare zero so "0" round-trips with format_form
    std::size_t i = 0;
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i < text.size() && text[i] == '0') {
        std::size_t j = i + 1;
        while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
        if (j == text.size()) return Form();
    }
    return detail::FormParser(text).parse();
}

/// Deterministic rendering: terms sorted by (degree, blade mask); coefficient
/// 1 is elided next to a blade. parse_form(format_form(f)) == f for every f.
inline std::string format_form(const Form& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Mask, Rational>> terms(f.components().begin(), f.components().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        int da = mask_degree(a.first), db = mask_degree(b.first);
        return da != db ? da < db : a.first < b.first;
    });
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (m == 0) {
            out += mag.str();
        } else {
            if (mag != 1) out += mag.str() + " ";
            out += blade_name(m);
        }
        first = false;
    }
    return out;
}

} // namespace g2forge
