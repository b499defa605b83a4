#pragma once

/// Representation-type decomposition of 2- and 3-forms under the stabilizer
/// of the model 3-form, plus the calibration classifier for coordinate
/// subspaces and the exact identity suite that anchors the other modules.
///
/// Everything here works for any pair (phi, psi = *phi) handed in through
/// G2Pair, so alternate sign conventions and product-structure forms reuse
/// the same code paths. All arithmetic is exact.

#include <g2forge/form.hpp>
#include <g2forge/linalg.hpp>

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace g2forge {

inline const std::vector<Mask>& masks_of_degree(int k) {
    static const auto tables = [] {
        std::array<std::vector<Mask>, kDim + 1> t;
        for (Mask m = 0;; ++m) {
            t[mask_degree(m)].push_back(m);
            if (m == kFullMask) break;
        }
        return t;
    }();
    if (k < 0 || k > kDim) throw std::out_of_range("degree must be in 0..7");
    return tables[k];
}

inline RatVec form_to_vec(const Form& f, const std::vector<Mask>& basis) {
    RatVec v(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i) v[i] = f.coeff(basis[i]);
    return v;
}

inline Form vec_to_form(const RatVec& v, const std::vector<Mask>& basis) {
    Form f;
    for (std::size_t i = 0; i < basis.size(); ++i) f.add(basis[i], v[i]);
    return f;
}

/// A positive 3-form together with its Hodge dual and a human-readable tag.
struct G2Pair {
    Form phi;
    Form psi;
    std::string label;

    static G2Pair model(Convention conv = Convention::standard) {
        return {model_phi(conv), model_psi(conv),
                conv == Convention::standard ? "standard" : "alt"};
    }

    static G2Pair from_phi(Form phi, std::string label = "custom") {
        Form psi = hodge(phi);
        return {std::move(phi), std::move(psi), std::move(label)};
    }
};

struct TypeDecomp2 {
    Form pi7;
    Form pi14;
};

struct TypeDecomp3 {
    Form pi1;
    Form pi7;
    Form pi27;
};

/// Spectrum and eigenprojections of P(beta) = *(phi ^ beta) on the 21
/// dimensional space of 2-forms, over the increasing-mask monomial basis.
struct TwoFormSpectrum {
    Rational lambda7;
    Rational lambda14;
    RatMat mat_p;  // 21x21 matrix of P
    RatMat pi7;
    RatMat pi14;
};

/// 35x35 projection matrices for the three graded pieces of Lambda^3.
struct ThreeFormProjectors {
    RatMat pi1;
    RatMat pi7;
    RatMat pi27;
};

namespace detail {

inline bool rational_sqrt(const Rational& r, Rational& out) {
    if (r < 0) return false;
    BigInt n = numerator(r), d = denominator(r);
    BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    out = Rational(sn, sd);
    return true;
}

inline RatMat operator_matrix_deg2(const G2Pair& pair) {
    const auto& basis = masks_of_degree(2);
    RatMat m(basis.size(), RatVec(basis.size(), 0));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        Form img = hodge(wedge(pair.phi, Form::monomial(basis[j])));
        RatVec col = form_to_vec(img, basis);
        for (std::size_t i = 0; i < basis.size(); ++i) m[i][j] = col[i];
    }
    return m;
}

} // namespace detail

/// Exact eigen-decomposition of P via its quadratic minimal polynomial.
/// The two eigenvalues must be rational and the eigenspace dimensions,
/// obtained as exact traces of the idempotent projections, must be 7 and 14.
inline TwoFormSpectrum two_form_spectrum(const G2Pair& pair) {
    const std::size_t n = masks_of_degree(2).size();
    RatMat p = detail::operator_matrix_deg2(pair);
    RatMat p2 = mat_mul(p, p);

    // find alpha, beta with P^2 = alpha P + beta I
    std::optional<Rational> alpha;
    for (std::size_t i = 0; i < n && !alpha; ++i)
        for (std::size_t j = 0; j < n && !alpha; ++j)
            if (i != j && p[i][j] != 0) alpha = p2[i][j] / p[i][j];
    if (!alpha) throw InternalError("two_form_spectrum: operator is diagonal, no split");
    Rational beta = p2[0][0] - *alpha * p[0][0];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational expect = *alpha * p[i][j] + (i == j ? beta : Rational(0));
            if (p2[i][j] != expect)
                throw InternalError("two_form_spectrum: minimal polynomial is not quadratic");
        }

    Rational disc = *alpha * *alpha + 4 * beta, s;
    if (!detail::rational_sqrt(disc, s) || s == 0)
        throw InternalError("two_form_spectrum: eigenvalues not distinct rationals");
    Rational l1 = (*alpha + s) / 2, l2 = (*alpha - s) / 2;

    auto projection = [&](const Rational& keep, const Rational& drop) {
        RatMat proj(n, RatVec(n, 0));
        Rational scale = Rational(1) / (keep - drop);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                proj[i][j] = (p[i][j] - (i == j ? drop : Rational(0))) * scale;
        return proj;
    };
    RatMat pr1 = projection(l1, l2), pr2 = projection(l2, l1);
    auto trace = [n](const RatMat& m) {
        Rational t = 0;
        for (std::size_t i = 0; i < n; ++i) t += m[i][i];
        return t;
    };
    Rational t1 = trace(pr1), t2 = trace(pr2);

    TwoFormSpectrum out;
    out.mat_p = std::move(p);
    if (t1 == 7 && t2 == 14) {
        out.lambda7 = l1;
        out.lambda14 = l2;
        out.pi7 = std::move(pr1);
        out.pi14 = std::move(pr2);
    } else if (t1 == 14 && t2 == 7) {
        out.lambda7 = l2;
        out.lambda14 = l1;
        out.pi7 = std::move(pr2);
        out.pi14 = std::move(pr1);
    } else {
        throw InternalError("two_form_spectrum: eigenspace dimensions are not 7/14");
    }
    return out;
}

inline ThreeFormProjectors three_form_projectors(const G2Pair& pair) {
    const auto& basis = masks_of_degree(3);
    const std::size_t n = basis.size();
    Rational phi_norm = norm_squared(pair.phi);
    if (phi_norm == 0) throw InternalError("three_form_projectors: phi vanishes");
    RatVec phi_vec = form_to_vec(pair.phi, basis);

    ThreeFormProjectors out;
    out.pi1.assign(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.pi1[i][j] = phi_vec[i] * phi_vec[j] / phi_norm;

    // the vector-type piece is the image of alpha -> *(alpha ^ phi)
    std::vector<Form> gen(kDim);
    for (int i = 1; i <= kDim; ++i)
        gen[i - 1] = hodge(wedge(Form::monomial(axis_mask(i)), pair.phi));
    RatMat gram(kDim, RatVec(kDim, 0));
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) gram[i][j] = inner(gen[i], gen[j]);
    if (determinant(gram) == 0)
        throw InternalError("three_form_projectors: vector-type generators are degenerate");

    std::vector<RatVec> gen_vec(kDim);
    for (int i = 0; i < kDim; ++i) gen_vec[i] = form_to_vec(gen[i], basis);
    out.pi7.assign(n, RatVec(n, 0));
    for (std::size_t j = 0; j < n; ++j) {
        RatVec rhs(kDim, 0);
        for (int i = 0; i < kDim; ++i) rhs[i] = gen_vec[i][j]; // <gen_i, e_j>
        RatVec c;
        if (!solve_linear(gram, rhs, c))
            throw InternalError("three_form_projectors: Gram system inconsistent");
        for (std::size_t i = 0; i < n; ++i) {
            Rational acc = 0;
            for (int k = 0; k < kDim; ++k) acc += c[k] * gen_vec[k][i];
            out.pi7[i][j] = acc;
        }
    }

    out.pi27.assign(n, RatVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.pi27[i][j] = (i == j ? Rational(1) : Rational(0)) - out.pi1[i][j] - out.pi7[i][j];
    return out;
}

inline Form apply_matrix(const RatMat& m, const Form& f, const std::vector<Mask>& basis) {
    RatVec v = form_to_vec(f, basis);
    RatVec out(basis.size(), 0);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (v[j] != 0) out[i] += m[i][j] * v[j];
    return vec_to_form(out, basis);
}

inline TypeDecomp2 decompose2(const Form& beta, const G2Pair& pair = G2Pair::model()) {
    if (!beta.has_degree(2)) throw std::invalid_argument("decompose2: expected a 2-form");
    TwoFormSpectrum spec = two_form_spectrum(pair);
    const auto& basis = masks_of_degree(2);
    return {apply_matrix(spec.pi7, beta, basis), apply_matrix(spec.pi14, beta, basis)};
}

inline TypeDecomp3 decompose3(const Form& gamma, const G2Pair& pair = G2Pair::model()) {
    if (!gamma.has_degree(3)) throw std::invalid_argument("decompose3: expected a 3-form");
    ThreeFormProjectors proj = three_form_projectors(pair);
    const auto& basis = masks_of_degree(3);
    TypeDecomp3 out;
    out.pi1 = apply_matrix(proj.pi1, gamma, basis);
    out.pi7 = apply_matrix(proj.pi7, gamma, basis);
    out.pi27 = apply_matrix(proj.pi27, gamma, basis);
    return out;
}

enum class Calibration { associative, coassociative, negatively_calibrated, not_calibrated };

inline std::string to_string(Calibration c) {
    switch (c) {
        case Calibration::associative: return "associative";
        case Calibration::coassociative: return "coassociative";
        case Calibration::negatively_calibrated: return "negatively-calibrated";
        case Calibration::not_calibrated: return "not-calibrated";
    }
    return "?";
}

struct CalibrationReport {
    Mask subset = 0;
    Calibration classification = Calibration::not_calibrated;
    Form restriction;        // calibration form restricted to the subspace
    Form complementary;      // the other calibration restricted there
};

/// Classify the coordinate subspace spanned by S against the calibration of
/// matching degree, using the increasing-index orientation of S.
inline CalibrationReport calibration_check(Mask subset, const G2Pair& pair = G2Pair::model()) {
    int k = mask_degree(subset);
    if (k != 3 && k != 4) throw std::invalid_argument("calibration_check: |S| must be 3 or 4");
    const Form& cal = (k == 3) ? pair.phi : pair.psi;
    const Form& other = (k == 3) ? pair.psi : pair.phi;

    CalibrationReport rep;
    rep.subset = subset;
    rep.restriction = restrict_to_axes(cal, subset);
    rep.complementary = restrict_to_axes(other, subset);
    Form vol_s = Form::monomial(subset);
    if (rep.restriction == vol_s)
        rep.classification = (k == 3) ? Calibration::associative : Calibration::coassociative;
    else if (rep.restriction == -vol_s)
        rep.classification = Calibration::negatively_calibrated;
    else
        rep.classification = Calibration::not_calibrated;
    return rep;
}

struct NormalFrameReport {
    Mask subset = 0;
    int orientation_sign = 1;  // +1: calibrated by +psi; -1: by -psi (reversed orientation)
    int duality_sign = 0;      // -1: anti-self-dual frame, +1: self-dual, 0: mixed
    std::vector<int> normal_axes;
    std::vector<Form> restrictions;  // iota_{e_i} phi pulled back to span S
    std::vector<Form> defects;       // component of the opposite duality type
    bool independent = false;
    bool pass = false;
};

/// Restrict the contraction of phi with each normal direction to the
/// subspace and measure its duality type for the calibrated orientation
/// (reversed from increasing-index order when the subspace is negatively
/// calibrated). A healthy pair gives three independent restrictions of one
/// pure type: anti-self-dual for the standard convention, self-dual for the
/// opposite-chirality one.
inline NormalFrameReport normal_frame_check(Mask subset, const G2Pair& pair = G2Pair::model()) {
    auto cal = calibration_check(subset, pair);
    if (mask_degree(subset) != 4 ||
        (cal.classification != Calibration::coassociative &&
         cal.classification != Calibration::negatively_calibrated))
        throw std::invalid_argument("normal_frame_check: subset is not 4-dimensional calibrated");

    NormalFrameReport rep;
    rep.subset = subset;
    rep.orientation_sign = cal.classification == Calibration::coassociative ? 1 : -1;
    rep.normal_axes = mask_axes(mask_complement(subset));

    // 2-form monomial basis of the subspace, for the rank computation
    std::vector<Mask> basis2;
    for (Mask m : masks_of_degree(2))
        if ((m & ~subset) == 0) basis2.push_back(m);

    RatMat rows;
    std::vector<Form> anti_parts, self_parts;
    for (int axis : rep.normal_axes) {
        Form rho = restrict_to_axes(contract(Form::monomial(axis_mask(axis)), pair.phi), subset);
        Form starred = hodge_on_axes(rho, subset) * Rational(rep.orientation_sign);
        self_parts.push_back((rho + starred) / 2);
        anti_parts.push_back((rho - starred) / 2);
        rows.push_back(form_to_vec(rho, basis2));
        rep.restrictions.push_back(std::move(rho));
    }
    bool all_anti = true, all_self = true;
    for (std::size_t i = 0; i < self_parts.size(); ++i) {
        if (!self_parts[i].is_zero()) all_anti = false;
        if (!anti_parts[i].is_zero()) all_self = false;
    }
    if (all_anti && !all_self) {
        rep.duality_sign = -1;
        rep.defects = std::move(self_parts);
    } else if (all_self && !all_anti) {
        rep.duality_sign = 1;
        rep.defects = std::move(anti_parts);
    } else {
        rep.duality_sign = 0;
        rep.defects = std::move(self_parts);
    }
    rep.independent = mat_rank(rows) == static_cast<int>(rep.normal_axes.size());
    rep.pass = rep.duality_sign != 0 && rep.independent;
    return rep;
}

struct IdentityCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct IdentityReport {
    std::string convention;
    Rational lambda7 = 0;
    Rational lambda14 = 0;
    Rational cA = 0;
    Rational cB = 0;
    std::map<std::string, int> dimensions;
    std::vector<IdentityCheck> checks;
    bool standard_orientation = false;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void record(std::string name, bool pass, std::string detail = "") {
        checks.push_back({std::move(name), pass, std::move(detail)});
    }
};

namespace detail {

inline Form random_one_form(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    Form f;
    for (int i = 1; i <= kDim; ++i) f.add(axis_mask(i), Rational(num(rng), den(rng)));
    return f;
}

inline Form random_form_of_degree(std::mt19937& rng, int k) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    Form f;
    for (Mask m : masks_of_degree(k)) f.add(m, Rational(num(rng), den(rng)));
    return f;
}

/// Find c with op(u) = c*u for all 1-forms u, or nullopt when op is not a
/// scalar multiple of the identity.
inline std::optional<Rational> scalar_multiplier(const std::function<Form(const Form&)>& op) {
    std::optional<Rational> c;
    for (int i = 1; i <= kDim; ++i) {
        Form u = Form::monomial(axis_mask(i));
        Form img = op(u);
        Rational diag = img.coeff(axis_mask(i));
        if (img != u * diag) return std::nullopt;
        if (!c)
            c = diag;
        else if (*c != diag)
            return std::nullopt;
    }
    return c;
}

} // namespace detail

/// Measure the scalar constants of the two composite star/wedge operators on
/// 1-forms and the eigenvalues of P, and cross-check the linear relations
/// among them. See identity_suite for the full battery.
inline IdentityReport scalar_constants(const G2Pair& pair = G2Pair::model()) {
    IdentityReport rep;
    rep.convention = pair.label;

    auto op_a = [&pair](const Form& u) { return hodge(wedge(hodge(wedge(u, pair.phi)), pair.phi)); };
    auto op_b = [&pair](const Form& u) { return hodge(wedge(hodge(wedge(u, pair.psi)), pair.psi)); };
    auto ca = detail::scalar_multiplier(op_a);
    auto cb = detail::scalar_multiplier(op_b);
    if (!ca) throw InternalError("scalar_constants: *( *(u^phi) ^ phi ) is not scalar");
    if (!cb) throw InternalError("scalar_constants: *( *(u^psi) ^ psi ) is not scalar");
    rep.cA = *ca;
    rep.cB = *cb;

    // the scalar property must also hold on random rational 1-forms
    std::mt19937 rng(20260815u);
    bool random_ok = true;
    for (int t = 0; t < 4; ++t) {
        Form u = detail::random_one_form(rng);
        if (op_a(u) != u * rep.cA || op_b(u) != u * rep.cB) random_ok = false;
    }
    rep.record("scalar-operators-on-random-input", random_ok);

    TwoFormSpectrum spec = two_form_spectrum(pair);
    rep.lambda7 = spec.lambda7;
    rep.lambda14 = spec.lambda14;
    rep.record("trace-relation-7l7+14l14=0", 7 * spec.lambda7 + 14 * spec.lambda14 == 0);
    rep.record("unit-lambda14", spec.lambda14 == 1 || spec.lambda14 == -1);
    rep.standard_orientation = (rep.cA == -4 && rep.cB == 3 && rep.lambda14 == 1);
    return rep;
}

/// The full exact identity battery for a calibration pair: scalar constants,
/// eigenstructure, projector algebra, kernel characterizations, calibration
/// and normal-frame checks over every coordinate subspace, and the pointwise
/// vanishing of (normal volume form) ^ phi on calibrated subspaces.
inline IdentityReport identity_suite(const G2Pair& pair = G2Pair::model()) {
    IdentityReport rep = scalar_constants(pair);

    TwoFormSpectrum spec = two_form_spectrum(pair);
    const auto& basis2 = masks_of_degree(2);
    const auto& basis3 = masks_of_degree(3);
    const std::size_t n2 = basis2.size(), n3 = basis3.size();

    bool sym = true;
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (spec.mat_p[i][j] != spec.mat_p[j][i]) sym = false;
    rep.record("P-symmetric", sym);

    Rational tr = 0;
    for (std::size_t i = 0; i < n2; ++i) tr += spec.mat_p[i][i];
    rep.record("P-traceless", tr == 0);

    auto is_idempotent = [](const RatMat& m) { return mat_mul(m, m) == m; };
    auto is_zero_mat = [](const RatMat& m) {
        for (const auto& row : m)
            for (const auto& v : row)
                if (v != 0) return false;
        return true;
    };
    auto mat_sub = [](RatMat a, const RatMat& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
        return a;
    };

    rep.record("deg2-projectors-idempotent", is_idempotent(spec.pi7) && is_idempotent(spec.pi14));
    rep.record("deg2-projectors-annihilate", is_zero_mat(mat_mul(spec.pi7, spec.pi14)));
    rep.record("deg2-projectors-complete",
               is_zero_mat(mat_sub(mat_sub(identity_matrix(n2), spec.pi7), spec.pi14)));
    rep.dimensions["Lambda2_7"] = 7;
    rep.dimensions["Lambda2_14"] = 14;

    ThreeFormProjectors proj = three_form_projectors(pair);
    auto trace_of = [](const RatMat& m) {
        Rational t = 0;
        for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
        return t;
    };
    rep.record("deg3-projectors-idempotent",
               is_idempotent(proj.pi1) && is_idempotent(proj.pi7) && is_idempotent(proj.pi27));
    rep.record("deg3-projectors-annihilate",
               is_zero_mat(mat_mul(proj.pi1, proj.pi7)) && is_zero_mat(mat_mul(proj.pi7, proj.pi27)) &&
                   is_zero_mat(mat_mul(proj.pi1, proj.pi27)));
    bool dims3 = trace_of(proj.pi1) == 1 && trace_of(proj.pi7) == 7 && trace_of(proj.pi27) == 27;
    rep.record("deg3-dimensions-1-7-27", dims3);
    rep.dimensions["Lambda3_1"] = 1;
    rep.dimensions["Lambda3_7"] = 7;
    rep.dimensions["Lambda3_27"] = 27;

    // kernel characterizations: wedging with psi kills exactly the 14-part,
    // wedging with phi kills the 1- and 27-parts
    bool ker14 = true, ker27 = true;
    for (Mask m : basis2) {
        TypeDecomp2 d = decompose2(Form::monomial(m), pair);
        if (!wedge(d.pi14, pair.psi).is_zero()) ker14 = false;
        if (!d.pi7.is_zero() && wedge(d.pi7, pair.psi).is_zero()) ker14 = false;
    }
    for (Mask m : basis3) {
        TypeDecomp3 d = decompose3(Form::monomial(m), pair);
        if (!wedge(d.pi27, pair.phi).is_zero()) ker27 = false;
        if (!wedge(d.pi27, pair.psi).is_zero()) ker27 = false;
        if (!wedge(d.pi1, pair.phi).is_zero()) ker27 = false;
    }
    rep.record("deg2-14-part-killed-by-psi", ker14);
    rep.record("deg3-1-and-27-parts-killed-by-phi", ker27);

    // reconstruction and orthogonality on a random input of each degree
    std::mt19937 rng(977231u);
    Form b2 = detail::random_form_of_degree(rng, 2);
    TypeDecomp2 d2 = decompose2(b2, pair);
    rep.record("deg2-reconstruction", d2.pi7 + d2.pi14 == b2 && inner(d2.pi7, d2.pi14) == 0);
    Form b3 = detail::random_form_of_degree(rng, 3);
    TypeDecomp3 d3 = decompose3(b3, pair);
    rep.record("deg3-reconstruction", d3.pi1 + d3.pi7 + d3.pi27 == b3 &&
                                          inner(d3.pi1, d3.pi7) == 0 && inner(d3.pi1, d3.pi27) == 0 &&
                                          inner(d3.pi7, d3.pi27) == 0);

    // calibration census over all coordinate subspaces
    int assoc = 0, coassoc = 0, neg3 = 0, neg4 = 0;
    bool complement_pairing = true, lemma_pointwise = true, frames_ok = true;
    int frame_duality = 0;
    bool duality_uniform = true;
    for (Mask s : masks_of_degree(4)) {
        auto cal = calibration_check(s, pair);
        auto comp = calibration_check(mask_complement(s), pair);
        if (cal.classification == Calibration::coassociative) {
            ++coassoc;
            if (comp.classification != Calibration::associative) complement_pairing = false;
        } else if (cal.classification == Calibration::negatively_calibrated) {
            ++neg4;
            if (comp.classification != Calibration::negatively_calibrated)
                complement_pairing = false;
        }
        if (cal.classification == Calibration::coassociative ||
            cal.classification == Calibration::negatively_calibrated) {
            if (!cal.complementary.is_zero()) lemma_pointwise = false;
            // the current of the subtorus carries the normal volume form
            if (!wedge(Form::monomial(mask_complement(s)), pair.phi).is_zero())
                lemma_pointwise = false;
            auto frame = normal_frame_check(s, pair);
            if (!frame.pass) frames_ok = false;
            if (frame_duality == 0)
                frame_duality = frame.duality_sign;
            else if (frame.duality_sign != frame_duality)
                duality_uniform = false;
        }
    }
    for (Mask s : masks_of_degree(3)) {
        auto cal = calibration_check(s, pair);
        if (cal.classification == Calibration::associative) ++assoc;
        if (cal.classification == Calibration::negatively_calibrated) ++neg3;
    }
    rep.dimensions["associative-3-subspaces"] = assoc;
    rep.dimensions["coassociative-4-subspaces"] = coassoc;
    rep.dimensions["negative-3-subspaces"] = neg3;
    rep.dimensions["negative-4-subspaces"] = neg4;
    rep.dimensions["normal-frame-duality-sign"] = frame_duality;
    rep.record("calibrated-complement-pairing", complement_pairing);
    rep.record("normal-volume-wedge-phi-vanishes", lemma_pointwise);
    rep.record("normal-frames-pure-type-and-independent", frames_ok);
    rep.record("normal-frame-duality-uniform", duality_uniform);

    return rep;
}

} // namespace g2forge
