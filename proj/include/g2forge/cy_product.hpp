#pragma once
// Product structures on S^1 x T^6: flat SU(3) data and the induced product
// pair, fiber integration over the circle, (p,q) grading of two-forms for
// the fixed complex pairing, and the spectral divisor pipeline.

#include <g2forge/fourier.hpp>
#include <g2forge/g2reps.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace g2forge {

/// Fixed identification z_j = x_{2j} + i x_{2j+1} for j = 1..3, with x_1 the
/// circle coordinate. The rotation acts on covectors as e_{2j} -> e_{2j+1},
/// e_{2j+1} -> -e_{2j}.
struct ComplexPairing {
    static constexpr int theta_axis = 1;

    static bool complex_axis(int axis) { return axis >= 2 && axis <= kDim; }
    static int line_of(int axis) { return axis / 2; }        // 1..3
    static int real_axis(int line) { return 2 * line; }
    static int imag_axis(int line) { return 2 * line + 1; }
    static int partner(int axis) { return axis % 2 == 0 ? axis + 1 : axis - 1; }

    /// True when the axis set is a union of complex coordinate lines.
    static bool invariant(Mask axes) {
        if (axes & axis_mask(theta_axis)) return false;
        for (int line = 1; line <= 3; ++line) {
            bool re = axes & axis_mask(real_axis(line));
            bool im = axes & axis_mask(imag_axis(line));
            if (re != im) return false;
        }
        return true;
    }
};

/// Flat SU(3) data on the T^6 factor: the symplectic form and the real and
/// imaginary parts of the complex volume form, all constant with axes 2..7.
/// `normalization` records the ratio holvol_re ^ holvol_im : (2/3) kahler^3
/// verified by validate_su3.
struct SU3Structure {
    Form kahler;
    Form holvol_re;
    Form holvol_im;
    ComplexPairing pairing;
    Rational normalization = 0;

    static SU3Structure standard();
};

/// Check the structure equations and return the volume normalization ratio.
/// Throws invalid-argument naming the first failed invariant.
inline Rational validate_su3(const SU3Structure& s) {
    const Mask theta = axis_mask(ComplexPairing::theta_axis);
    for (const Form* f : {&s.kahler, &s.holvol_re, &s.holvol_im})
        for (const auto& [m, c] : f->components())
            if (m & theta)
                throw std::invalid_argument("validate_su3: data must live on axes 2..7");
    if (!s.kahler.homogeneous() || s.kahler.degree() != 2)
        throw std::invalid_argument("validate_su3: kahler form must be a 2-form");
    if (!s.holvol_re.homogeneous() || s.holvol_re.degree() != 3 ||
        !s.holvol_im.homogeneous() || s.holvol_im.degree() != 3)
        throw std::invalid_argument("validate_su3: volume form parts must be 3-forms");
    if (!wedge(s.kahler, s.holvol_re).is_zero())
        throw std::invalid_argument("validate_su3: kahler ^ holvol_re != 0");
    if (!wedge(s.kahler, s.holvol_im).is_zero())
        throw std::invalid_argument("validate_su3: kahler ^ holvol_im != 0");

    const Form vol6 = Form::monomial(mask_complement(theta));
    Form cubed = wedge(s.kahler, wedge(s.kahler, s.kahler));
    if (!(cubed - vol6 * Rational(6)).is_zero())
        throw std::invalid_argument("validate_su3: kahler^3 != 3! times the 6-volume");

    Form cross = wedge(s.holvol_re, s.holvol_im);
    Rational ratio = inner(cross, vol6) / Rational(4);  // (2/3) kahler^3 = 4 vol6
    if (!(cross - vol6 * (ratio * 4)).is_zero() || ratio == 0)
        throw std::invalid_argument("validate_su3: holvol_re ^ holvol_im is not a "
                                    "nonzero multiple of kahler^3");
    return ratio;
}

inline SU3Structure SU3Structure::standard() {
    auto m = [](std::initializer_list<int> axes) { return Form::monomial(axes_mask(axes)); };
    SU3Structure s;
    s.kahler = m({2, 3}) + m({4, 5}) + m({6, 7});
    s.holvol_re = m({2, 4, 6}) - m({2, 5, 7}) - m({3, 4, 7}) - m({3, 5, 6});
    s.holvol_im = -m({2, 4, 7}) - m({2, 5, 6}) - m({3, 4, 6}) + m({3, 5, 7});
    s.normalization = validate_su3(s);
    return s;
}

/// Assemble the product pair phi = dtheta ^ kahler - holvol_re,
/// psi = -dtheta ^ holvol_im + kahler^2 / 2 after validating the input.
inline G2Pair build_g2_from_su3(const SU3Structure& s) {
    validate_su3(s);
    Form dtheta = Form::monomial(axis_mask(ComplexPairing::theta_axis));
    Form phi = wedge(dtheta, s.kahler) - s.holvol_re;
    Form psi = -wedge(dtheta, s.holvol_im) + wedge(s.kahler, s.kahler) / 2;
    return {std::move(phi), std::move(psi), "product"};
}

enum class ProductType { divisor, lagrangian_circle, none };

struct ProductCoassociative {
    Mask tangent = 0;
    Calibration classification = Calibration::not_calibrated;
    ProductType type = ProductType::none;
    Rational coefficient = 0;  // calibration coefficient on the oriented subtorus
};

/// Classify every coordinate 4-subtorus of S^1 x T^6 against the product
/// calibration: the circle-factor family and the divisor family show up as
/// the two calibrated types.
inline std::vector<ProductCoassociative> classify_product_coassociatives(
    const SU3Structure& s = SU3Structure::standard()) {
    G2Pair pair = build_g2_from_su3(s);
    std::vector<ProductCoassociative> out;
    for (Mask t : masks_of_degree(4)) {
        ProductCoassociative row;
        row.tangent = t;
        auto rep = calibration_check(t, pair);
        row.classification = rep.classification;
        row.coefficient = inner(Form::monomial(t), rep.restriction);
        if (rep.classification == Calibration::coassociative ||
            rep.classification == Calibration::negatively_calibrated)
            row.type = (t & axis_mask(ComplexPairing::theta_axis))
                           ? ProductType::lagrangian_circle
                           : ProductType::divisor;
        out.push_back(std::move(row));
    }
    return out;
}

/// Fiber integration over the circle: blades with the theta factor keep
/// their theta-average with the factor stripped, everything else integrates
/// to zero.
inline Form pushforward(const Form& f) {
    const Mask theta = axis_mask(ComplexPairing::theta_axis);
    Form out;
    for (const auto& [m, c] : f.components())
        if (m & theta) out += Form::monomial(static_cast<Mask>(m & ~theta), c);
    return out;
}

inline FourierForm pushforward(const FourierForm& f) {
    if (f.degree() < 1)
        throw std::invalid_argument("pushforward: need a field of degree >= 1");
    const Mask theta = axis_mask(ComplexPairing::theta_axis);
    return map_modes(f, f.degree() - 1, [theta](const WaveVector& k, const CForm& c) {
        if (k[0] != 0) return CForm();
        CForm out;
        for (const auto& [m, v] : c.components())
            if (m & theta) out.add(static_cast<Mask>(m & ~theta), v);
        return out;
    });
}

namespace cydetail {

inline void require_base_two_form(const CForm& c) {
    const Mask theta = axis_mask(ComplexPairing::theta_axis);
    for (const auto& [m, v] : c.components()) {
        if (mask_degree(m) != 2)
            throw std::invalid_argument("pq_split: need a 2-form");
        if (m & theta)
            throw std::invalid_argument("pq_split: blades must avoid the circle axis");
    }
}

inline Mask rotate_axis(int axis, double& sign) {
    // covector rotation: e_{2j} -> -e_{2j+1}, e_{2j+1} -> e_{2j}
    if (axis % 2 == 0) sign = -sign;
    return axis_mask(ComplexPairing::partner(axis));
}

}  // namespace cydetail

/// Pull a base 2-form back along the complex rotation of every pair.
/// Eigenvalue +1 on the mixed-type part, -1 on the pure-type parts.
inline CForm j_pullback2(const CForm& c) {
    cydetail::require_base_two_form(c);
    CForm out;
    for (const auto& [m, v] : c.components()) {
        auto axes = mask_axes(m);
        double sign = 1.0;
        Mask a = cydetail::rotate_axis(axes[0], sign);
        Mask b = cydetail::rotate_axis(axes[1], sign);
        int s = wedge_sign(a, b);
        if (s != 0) out.add(static_cast<Mask>(a | b), v * (sign * s));
    }
    return out;
}

namespace cydetail {

/// One-slot rotation sum: eigenvalue 2i on (2,0), -2i on (0,2), 0 on (1,1).
inline CForm j_mix2(const CForm& c) {
    CForm out;
    for (const auto& [m, v] : c.components()) {
        auto axes = mask_axes(m);
        for (int slot = 0; slot < 2; ++slot) {
            double sign = 1.0;
            Mask a = slot == 0 ? rotate_axis(axes[0], sign) : axis_mask(axes[0]);
            Mask b = slot == 1 ? rotate_axis(axes[1], sign) : axis_mask(axes[1]);
            int s = wedge_sign(a, b);
            if (s != 0) out.add(static_cast<Mask>(a | b), v * (sign * s));
        }
    }
    return out;
}

}  // namespace cydetail

struct PQParts {
    CForm p20;
    CForm p11;
    CForm p02;
};

/// Split a complex-coefficient base 2-form by type for the fixed pairing.
/// All projector coefficients are dyadic, so pure-type inputs come back
/// exactly and real inputs get bitwise-conjugate pure parts; the sum of the
/// parts reconstructs the input to rounding.
inline PQParts pq_split(const CForm& c) {
    cydetail::require_base_two_form(c);
    PQParts out;
    CForm anti = (c - j_pullback2(c)) * CScalar(0.5);
    CForm mix = cydetail::j_mix2(anti);
    out.p20 = (anti + mix * CScalar(0.0, -0.5)) * CScalar(0.5);
    out.p02 = (anti + mix * CScalar(0.0, 0.5)) * CScalar(0.5);
    out.p11 = c - anti;
    return out;
}

struct PQDecomp {
    FourierForm p20;
    FourierForm p11;
    FourierForm p02;
};

/// Modewise type splitting. Conjugation swaps the pure parts, so only the
/// mixed part keeps the realness flag of a real input.
inline PQDecomp pq_decompose(const FourierForm& f) {
    if (f.degree() != 2)
        throw std::invalid_argument("pq_decompose: need a degree-2 field");
    PQDecomp out{FourierForm(2, f.truncation()), FourierForm(2, f.truncation()),
                 FourierForm(2, f.truncation())};
    out.p11 = map_modes(f, 2, [](const WaveVector&, const CForm& c) { return pq_split(c).p11; });
    for (const auto& [k, c] : f.modes()) {
        PQParts parts = pq_split(c);
        out.p20.set_mode(k, std::move(parts.p20));
        out.p02.set_mode(k, std::move(parts.p02));
    }
    return out;
}

/// Rotate a base 1-form by the complex structure: the image of the real
/// covector of each pair is the imaginary one.
inline FourierForm j_rotate(const FourierForm& f) {
    if (f.degree() != 1)
        throw std::invalid_argument("j_rotate: need a degree-1 field");
    return map_modes(f, 1, [](const WaveVector&, const CForm& c) {
        CForm out;
        for (const auto& [m, v] : c.components()) {
            int axis = mask_axes(m)[0];
            if (!ComplexPairing::complex_axis(axis))
                throw std::invalid_argument("j_rotate: blades must avoid the circle axis");
            double sign = axis % 2 == 0 ? 1.0 : -1.0;
            out.add(axis_mask(ComplexPairing::partner(axis)), v * sign);
        }
        return out;
    });
}

/// A coordinate 4-torus pt x D inside S^1 x T^6, located by the two offsets
/// of its base normal axes and the circle point. `diagnostic` admits tangent
/// sets that are not rotation-invariant so the type check can be run as a
/// negative control.
struct DivisorSpec {
    Mask tangent_axes = 0;
    std::array<double, 2> normal_offsets{};
    double theta_offset = 0;
    bool diagnostic = false;
};

struct DivisorResiduals {
    double closure_of_f0 = 0;  // |d f0|
    double poisson = 0;        // relative gap in  Lap f0 = h0 - delta_m
    double pq_type = 0;        // pure-type fraction of Lap f0
};

struct PushforwardResult {
    DivisorSpec divisor;
    double sigma = 0;        // base mollifier width
    double sigma_theta = 0;  // circle mollifier width
    int truncation = 0;
    FourierForm H0;       // solved 3-form on the product
    FourierForm f0;       // circle average of the dtheta part of H0
    FourierForm h0;       // harmonic representative of the divisor class
    FourierForm delta_m;  // mollified divisor current on the base
    FourierForm phi;      // circle average of the higgs function of H0
    DivisorResiduals residuals;
    double dstar_gap = 0;           // relative gap in  d* f0 = J(d phi)
    double g_theta_dependence = 0;  // circle-frequency content of the base part of H0
};

/// Solve the product Poisson problem for a divisor-type 4-torus and verify
/// the consequences of the splitting: the base part of the solution is
/// circle-independent, the circle average f0 is closed and satisfies the
/// pushed-forward equation, the higgs average ties d* f0 to the rotated
/// gradient, and the Laplacian of f0 carries no pure-type component.
inline PushforwardResult divisor_solve(const DivisorSpec& spec, double sigma, int K,
                                       double sigma_theta = 0,
                                       const SU3Structure& s = SU3Structure::standard()) {
    const Mask theta = axis_mask(ComplexPairing::theta_axis);
    if (mask_degree(spec.tangent_axes) != 4 || (spec.tangent_axes & theta))
        throw std::invalid_argument("divisor_solve: tangent must be four base axes");
    if (!ComplexPairing::invariant(spec.tangent_axes) && !spec.diagnostic)
        throw std::invalid_argument("divisor_solve: tangent is not rotation-invariant; "
                                    "set diagnostic to run it as a negative control");
    if (!(sigma > 0) || (sigma_theta != 0 && !(sigma_theta > 0)))
        throw std::invalid_argument("divisor_solve: mollifier width must be positive");
    if (K < 1) throw std::invalid_argument("divisor_solve: truncation must be >= 1");
    for (double off : {spec.normal_offsets[0], spec.normal_offsets[1], spec.theta_offset})
        if (!(off >= 0.0) || off >= 1.0)
            throw std::invalid_argument("divisor_solve: offsets must lie in [0, 1)");
    if (sigma_theta == 0) sigma_theta = sigma;

    PushforwardResult out{spec,
                          sigma,
                          sigma_theta,
                          K,
                          FourierForm(3, K),
                          FourierForm(2, K),
                          FourierForm(2, K),
                          FourierForm(2, K),
                          FourierForm(0, K)};

    auto normals = mask_axes(static_cast<Mask>(mask_complement(spec.tangent_axes) & ~theta));
    const Mask base_blade = axes_mask({normals[0], normals[1]});
    const Mask full_blade = static_cast<Mask>(base_blade | theta);
    const Form h = Form::monomial(base_blade);

    const double damp_theta = 0.5 * kTwoPi * kTwoPi * sigma_theta * sigma_theta;
    const double damp_base = 0.5 * kTwoPi * kTwoPi * sigma * sigma;
    FourierForm current(3, K);
    WaveVector k{};
    for (int k1 = -K; k1 <= K; ++k1)
        for (int ka = -K; ka <= K; ++ka)
            for (int kb = -K; kb <= K; ++kb) {
                k[0] = k1;
                k[static_cast<std::size_t>(normals[0] - 1)] = ka;
                k[static_cast<std::size_t>(normals[1] - 1)] = kb;
                double mag = std::exp(-damp_theta * k1 * k1 -
                                      damp_base * (ka * ka + kb * kb));
                double phase = k1 * spec.theta_offset + ka * spec.normal_offsets[0] +
                               kb * spec.normal_offsets[1];
                CForm c;
                c.add(full_blade, std::polar(mag, -kTwoPi * phase));
                current.set_mode(k, std::move(c));
            }
    current.assert_real();

    FourierForm forcing = FourierForm::constant(wedge(Form::monomial(theta), h), K) - current;
    out.H0 = solve_poisson(forcing);
    out.f0 = pushforward(out.H0);
    out.h0 = FourierForm::constant(h, K);
    out.delta_m = pushforward(current);

    double base_part = 0;
    for (const auto& [kk, c] : out.H0.modes()) {
        if (kk[0] == 0) continue;
        for (const auto& [m, v] : c.components())
            if (!(m & theta)) base_part += std::norm(v);
    }
    out.g_theta_dependence = std::sqrt(base_part);

    G2Pair pair = build_g2_from_su3(s);
    out.phi = map_modes(out.H0, 0, [&pair, theta](const WaveVector& kk, const CForm& c) {
        CForm avg;
        if (kk[0] == 0) avg.add(0, -c.pair(pair.phi));
        return avg;
    });

    FourierForm drive = out.h0 - out.delta_m;
    double drive_norm = l2_norm(drive);
    out.residuals.poisson =
        l2_norm(laplacian(out.f0) - drive) / (drive_norm > 0 ? drive_norm : 1.0);
    out.residuals.closure_of_f0 = l2_norm(d(out.f0));

    FourierForm lap = laplacian(out.f0);
    PQDecomp parts = pq_decompose(lap);
    double lap_norm = l2_norm(lap);
    out.residuals.pq_type =
        std::sqrt(parts.p20.norm_squared() + parts.p02.norm_squared()) /
        (lap_norm > 0 ? lap_norm : 1.0);

    FourierForm lhs = dstar(out.f0);
    FourierForm rhs = j_rotate(d(out.phi));
    double rel = std::max(l2_norm(lhs), l2_norm(rhs));
    out.dstar_gap = l2_norm(lhs - rhs) / (rel > 0 ? rel : 1.0);
    return out;
}

}  // namespace g2forge
