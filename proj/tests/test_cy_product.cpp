#include <g2forge/cy_product.hpp>
#include <g2forge/torus_field.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>

using namespace g2forge;

namespace {

Form m(std::initializer_list<int> axes) { return Form::monomial(axes_mask(axes)); }

// Negate every component whose blade meets the flip set an odd number of times.
Form flip_axes(const Form& f, Mask flips) {
    Form out;
    for (const auto& [mask, c] : f.components()) {
        int hits = mask_degree(static_cast<Mask>(mask & flips));
        out += Form::monomial(mask, hits % 2 == 0 ? c : -c);
    }
    return out;
}

// Random field over the full box on the first `active` axes, all blades.
FourierForm random_field(std::mt19937& rng, int degree, int truncation, int active) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    FourierForm f(degree, truncation);
    const auto& masks = masks_of_degree(degree);
    WaveVector k{};
    std::function<void(int)> fill = [&](int axis) {
        if (axis == active) {
            CForm c;
            for (Mask mk : masks) c.add(mk, CScalar(coeff(rng), coeff(rng)));
            f.set_mode(k, std::move(c));
            return;
        }
        for (int v = -truncation; v <= truncation; ++v) {
            k[static_cast<std::size_t>(axis)] = v;
            fill(axis + 1);
        }
        k[static_cast<std::size_t>(axis)] = 0;
    };
    fill(0);
    return f;
}

// Random complex 2-form with blades on the six base axes.
CForm random_base_two_form(std::mt19937& rng, bool real) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    CForm c;
    for (Mask mk : masks_of_degree(2))
        if (!(mk & axis_mask(1)))
            c.add(mk, CScalar(coeff(rng), real ? 0.0 : coeff(rng)));
    return c;
}

double gap(const CForm& a, const CForm& b) { return std::sqrt((a - b).norm_squared()); }

}  // namespace

TEST_CASE("standard flat structure satisfies its equations") {
    SU3Structure s = SU3Structure::standard();
    REQUIRE(s.normalization == Rational(-1));
    REQUIRE(validate_su3(s) == Rational(-1));
    REQUIRE(wedge(s.kahler, s.holvol_re).is_zero());
    REQUIRE(wedge(s.kahler, s.holvol_im).is_zero());
    Form vol6 = Form::monomial(axes_mask({2, 3, 4, 5, 6, 7}));
    REQUIRE((wedge(s.kahler, wedge(s.kahler, s.kahler)) - vol6 * Rational(6)).is_zero());
    REQUIRE((wedge(s.holvol_re, s.holvol_im) + vol6 * Rational(4)).is_zero());
}

TEST_CASE("structure validation rejects broken data") {
    SU3Structure s = SU3Structure::standard();
    SU3Structure scaled = s;
    scaled.kahler = s.kahler * Rational(2);
    REQUIRE_THROWS_AS(validate_su3(scaled), std::invalid_argument);
    REQUIRE_THROWS_AS(build_g2_from_su3(scaled), std::invalid_argument);

    SU3Structure skew = s;
    skew.holvol_re += m({2, 3, 4});  // kahler ^ holvol_re picks up e23 ^ e234 ... = nonzero
    REQUIRE_THROWS_AS(validate_su3(skew), std::invalid_argument);

    SU3Structure contaminated = s;
    contaminated.kahler += m({1, 2});
    REQUIRE_THROWS_AS(validate_su3(contaminated), std::invalid_argument);

    SU3Structure degenerate = s;
    degenerate.holvol_im = s.holvol_re;  // cross volume collapses to zero
    REQUIRE_THROWS_AS(validate_su3(degenerate), std::invalid_argument);
}

TEST_CASE("product pair matches its blade expansion and Hodge dual") {
    G2Pair pair = build_g2_from_su3(SU3Structure::standard());
    Form phi_expected = m({1, 2, 3}) + m({1, 4, 5}) + m({1, 6, 7}) - m({2, 4, 6}) +
                        m({2, 5, 7}) + m({3, 4, 7}) + m({3, 5, 6});
    Form psi_expected = m({2, 3, 4, 5}) + m({2, 3, 6, 7}) + m({4, 5, 6, 7}) + m({1, 2, 4, 7}) +
                        m({1, 2, 5, 6}) + m({1, 3, 4, 6}) - m({1, 3, 5, 7});
    REQUIRE((pair.phi - phi_expected).is_zero());
    REQUIRE((pair.psi - psi_expected).is_zero());
    REQUIRE((hodge(pair.phi) - pair.psi).is_zero());
    REQUIRE(inner(pair.phi, pair.phi) == Rational(7));
    REQUIRE(inner(pair.psi, pair.psi) == Rational(7));
    REQUIRE((wedge(pair.phi, pair.psi) - volume_form() * Rational(7)).is_zero());
}

TEST_CASE("flipping the last complex pair lands on the alternate model pair") {
    G2Pair pair = build_g2_from_su3(SU3Structure::standard());
    Mask flips = axes_mask({6, 7});
    REQUIRE((flip_axes(pair.phi, flips) - model_phi(Convention::alt)).is_zero());
    REQUIRE((flip_axes(pair.psi, flips) - model_psi(Convention::alt)).is_zero());
}

TEST_CASE("coordinate subtori split into divisor and Lagrangian-circle types") {
    auto rows = classify_product_coassociatives();
    REQUIRE(rows.size() == 35);

    std::vector<Mask> divisors, circles, reversed, none;
    for (const auto& row : rows) {
        switch (row.classification) {
            case Calibration::coassociative:
                (row.type == ProductType::divisor ? divisors : circles).push_back(row.tangent);
                REQUIRE(row.coefficient == Rational(1));
                break;
            case Calibration::negatively_calibrated:
                reversed.push_back(row.tangent);
                REQUIRE(row.coefficient == Rational(-1));
                break;
            default:
                none.push_back(row.tangent);
                REQUIRE(row.type == ProductType::none);
                REQUIRE(row.coefficient == Rational(0));
        }
    }
    REQUIRE(divisors == std::vector<Mask>{axes_mask({2, 3, 4, 5}), axes_mask({2, 3, 6, 7}),
                                          axes_mask({4, 5, 6, 7})});
    REQUIRE(circles == std::vector<Mask>{axes_mask({1, 3, 4, 6}), axes_mask({1, 2, 5, 6}),
                                         axes_mask({1, 2, 4, 7})});
    REQUIRE(reversed == std::vector<Mask>{axes_mask({1, 3, 5, 7})});
    REQUIRE(none.size() == 28);

    // the divisor tangents are exactly the rotation-invariant 4-subtori
    for (const auto& row : rows) {
        bool invariant = ComplexPairing::invariant(row.tangent);
        REQUIRE(invariant == (row.type == ProductType::divisor));
    }
}

TEST_CASE("classification agrees with the alternate model under the pair flip") {
    auto rows = classify_product_coassociatives();
    G2Pair alt = G2Pair::model(Convention::alt);
    for (const auto& row : rows) {
        auto ref = calibration_check(row.tangent, alt);
        int overlap = mask_degree(static_cast<Mask>(row.tangent & axes_mask({6, 7})));
        Calibration expected = ref.classification;
        if (overlap % 2 == 1) {
            if (expected == Calibration::coassociative)
                expected = Calibration::negatively_calibrated;
            else if (expected == Calibration::negatively_calibrated)
                expected = Calibration::coassociative;
        }
        REQUIRE(row.classification == expected);
    }
}

TEST_CASE("pushforward integrates the circle fiber") {
    SU3Structure s = SU3Structure::standard();
    Form dtheta = m({1});

    REQUIRE((pushforward(wedge(dtheta, s.kahler)) - s.kahler).is_zero());
    REQUIRE(pushforward(s.kahler).is_zero());
    REQUIRE((pushforward(wedge(dtheta, s.holvol_re)) - s.holvol_re).is_zero());
    REQUIRE((pushforward(wedge(dtheta, s.kahler) + s.holvol_im) - s.kahler).is_zero());

    FourierForm f(2, 3);
    CForm mixed;
    mixed.add(axes_mask({1, 4}), CScalar(2.0, 1.0));
    mixed.add(axes_mask({2, 6}), CScalar(-3.0, 0.5));
    WaveVector k{};
    f.set_mode(k, mixed);
    WaveVector moving{};
    moving[0] = 2;
    f.set_mode(moving, mixed);
    WaveVector base{};
    base[3] = 1;
    f.set_mode(base, mixed);

    FourierForm pushed = pushforward(f);
    REQUIRE(pushed.degree() == 1);
    REQUIRE(pushed.modes().size() == 2);  // the circle-frequency mode integrates away
    REQUIRE(pushed.mode(moving).empty());
    CForm survivor;
    survivor.add(axes_mask({4}), CScalar(2.0, 1.0));
    REQUIRE(gap(pushed.mode(k), survivor) == 0.0);
    REQUIRE(gap(pushed.mode(base), survivor) == 0.0);

    REQUIRE_THROWS_AS(pushforward(FourierForm(0, 2)), std::invalid_argument);
}

TEST_CASE("pushforward anticommutes with the exterior derivative") {
    std::mt19937 rng(601);
    for (int degree : {1, 2, 3}) {
        FourierForm f = random_field(rng, degree, 1, 4);
        FourierForm lhs = pushforward(d(f));
        FourierForm rhs = d(pushforward(f));
        REQUIRE(l2_norm(lhs + rhs) <= 1e-12 * (1.0 + l2_norm(f)));
    }
}

TEST_CASE("product Laplacian assembles from base and fiber pieces") {
    std::mt19937 rng(602);
    FourierForm f = random_field(rng, 3, 1, 4);

    auto scale_modes = [](const FourierForm& g, auto factor) {
        return map_modes(g, g.degree(), [&factor](const WaveVector& k, const CForm& c) {
            return c * CScalar(factor(k), 0.0);
        });
    };
    auto base_lap = [&](const FourierForm& g) {
        return scale_modes(g, [](const WaveVector& k) {
            double acc = 0;
            for (int i = 1; i < kDim; ++i) acc += double(k[i]) * k[i];
            return kTwoPi * kTwoPi * acc;
        });
    };
    auto fiber_lap = [&](const FourierForm& g) {
        return scale_modes(g, [](const WaveVector& k) {
            return kTwoPi * kTwoPi * double(k[0]) * k[0];
        });
    };

    // split by blade: base part vs circle-factor part
    Mask theta = axis_mask(1);
    auto blade_part = [&](const FourierForm& g, bool with_theta) {
        return map_modes(g, g.degree(), [&](const WaveVector&, const CForm& c) {
            CForm out;
            for (const auto& [mk, v] : c.components())
                if (bool(mk & theta) == with_theta) out.add(mk, v);
            return out;
        });
    };

    FourierForm fiber_part = blade_part(f, true);
    FourierForm base_part = blade_part(f, false);
    FourierForm assembled = base_lap(fiber_part) + fiber_lap(fiber_part) +
                            base_lap(base_part) + fiber_lap(base_part);
    REQUIRE(l2_norm(laplacian(f) - assembled) <= 1e-12 * (1.0 + l2_norm(laplacian(f))));
}

TEST_CASE("type splitting grades the flat two-forms") {
    SU3Structure s = SU3Structure::standard();

    CForm kahler = CForm::from_real(s.kahler);
    PQParts parts = pq_split(kahler);
    REQUIRE(parts.p20.empty());
    REQUIRE(parts.p02.empty());
    REQUIRE(gap(parts.p11, kahler) == 0.0);
    REQUIRE(gap(j_pullback2(kahler), kahler) == 0.0);

    // the complex area form of the first two lines: (e2 + i e3) ^ (e4 + i e5)
    CForm area;
    area.add(axes_mask({2, 4}), CScalar(1.0, 0.0));
    area.add(axes_mask({3, 5}), CScalar(-1.0, 0.0));
    area.add(axes_mask({2, 5}), CScalar(0.0, 1.0));
    area.add(axes_mask({3, 4}), CScalar(0.0, 1.0));
    PQParts pure = pq_split(area);
    REQUIRE(gap(pure.p20, area) == 0.0);
    REQUIRE(pure.p11.empty());
    REQUIRE(pure.p02.empty());
    REQUIRE(gap(j_pullback2(area), area * CScalar(-1.0)) == 0.0);

    // its real part splits into conjugate pure halves
    CForm real_part;
    real_part.add(axes_mask({2, 4}), CScalar(1.0, 0.0));
    real_part.add(axes_mask({3, 5}), CScalar(-1.0, 0.0));
    PQParts halves = pq_split(real_part);
    REQUIRE(gap(halves.p20, area * CScalar(0.5)) == 0.0);
    REQUIRE(gap(halves.p02, area.conjugate() * CScalar(0.5)) == 0.0);
    REQUIRE(halves.p11.empty());

    REQUIRE_THROWS_AS(pq_split(CForm::monomial(axes_mask({2, 3, 4}))), std::invalid_argument);
    REQUIRE_THROWS_AS(pq_split(CForm::monomial(axes_mask({1, 2}))), std::invalid_argument);
}

TEST_CASE("type splitting is an exact idempotent decomposition") {
    std::mt19937 rng(603);
    for (int rep = 0; rep < 5; ++rep) {
        CForm c = random_base_two_form(rng, rep % 2 == 0);
        double scale = 1.0 + std::sqrt(c.norm_squared());
        PQParts parts = pq_split(c);
        REQUIRE(gap(parts.p20 + parts.p11 + parts.p02, c) <= 1e-15 * scale);
        REQUIRE(gap(j_pullback2(parts.p11), parts.p11) <= 1e-15 * scale);
        REQUIRE(gap(j_pullback2(parts.p20), parts.p20 * CScalar(-1.0)) <= 1e-15 * scale);
        REQUIRE(gap(j_pullback2(parts.p02), parts.p02 * CScalar(-1.0)) <= 1e-15 * scale);
        if (rep % 2 == 0) REQUIRE(gap(parts.p02, parts.p20.conjugate()) == 0.0);

        PQParts again = pq_split(parts.p20);
        REQUIRE(gap(again.p20, parts.p20) <= 1e-14 * scale);
        REQUIRE(std::sqrt(again.p11.norm_squared() + again.p02.norm_squared()) <= 1e-14 * scale);
    }
}

TEST_CASE("modewise type splitting keeps conjugate symmetry") {
    std::mt19937 rng(604);
    FourierForm f(2, 1);
    WaveVector k{};
    for (int k2 = -1; k2 <= 1; ++k2)
        for (int k6 = -1; k6 <= 1; ++k6) {
            k[1] = k2;
            k[5] = k6;
            f.set_mode(k, random_base_two_form(rng, false));
        }
    // impose realness by symmetrizing
    FourierForm sym = f;
    for (const auto& [kk, c] : f.modes()) {
        WaveVector neg{};
        for (int i = 0; i < kDim; ++i) neg[i] = -kk[i];
        sym.set_mode(neg, (f.mode(neg) + c.conjugate()) * CScalar(0.5));
    }
    REQUIRE(sym.assert_real());

    PQDecomp parts = pq_decompose(sym);
    REQUIRE(l2_norm(parts.p20 + parts.p11 + parts.p02 - sym) <= 1e-15 * (1.0 + l2_norm(sym)));
    REQUIRE(parts.p11.is_real());
    for (const auto& [kk, c] : parts.p20.modes()) {
        WaveVector neg{};
        for (int i = 0; i < kDim; ++i) neg[i] = -kk[i];
        REQUIRE(gap(parts.p02.mode(neg), c.conjugate()) == 0.0);
    }
    REQUIRE_THROWS_AS(pq_decompose(FourierForm(3, 1)), std::invalid_argument);
}

TEST_CASE("rotating one-forms squares to minus one") {
    FourierForm f(1, 1);
    CForm c;
    c.add(axes_mask({6}), CScalar(1.0, 0.0));
    WaveVector k{};
    f.set_mode(k, c);
    FourierForm once = j_rotate(f);
    REQUIRE(gap(once.mode(k), CForm::monomial(axes_mask({7}))) == 0.0);
    REQUIRE(l2_norm(j_rotate(once) + f) == 0.0);

    std::mt19937 rng(605);
    FourierForm mixed(1, 1);
    CForm blend;
    blend.add(axes_mask({2}), CScalar(0.3, -1.2));
    blend.add(axes_mask({5}), CScalar(-0.7, 0.4));
    mixed.set_mode(k, blend);
    REQUIRE(l2_norm(j_rotate(j_rotate(mixed)) + mixed) == 0.0);

    FourierForm bad(1, 1);
    bad.set_mode(k, CForm::monomial(axes_mask({1})));
    REQUIRE_THROWS_AS(j_rotate(bad), std::invalid_argument);
    REQUIRE_THROWS_AS(j_rotate(FourierForm(2, 1)), std::invalid_argument);
}

TEST_CASE("divisor pipeline verifies the mixed-type conclusion") {
    DivisorSpec spec{axes_mask({2, 3, 4, 5}), {0.3, 0.62}, 0.44};
    const double sigma = 0.05;
    const int K = 6;
    PushforwardResult res = divisor_solve(spec, sigma, K);

    REQUIRE(res.residuals.pq_type <= 1e-8);
    REQUIRE(res.residuals.closure_of_f0 <= 1e-10);
    REQUIRE(res.residuals.poisson <= 1e-12);
    REQUIRE(res.dstar_gap <= 1e-12);
    REQUIRE(res.g_theta_dependence == 0.0);
    REQUIRE(res.H0.assert_real());
    REQUIRE(res.f0.assert_real());
    REQUIRE(res.phi.assert_real());
    REQUIRE(!res.f0.is_zero());
    REQUIRE(!res.phi.is_zero());

    // every solved blade carries the circle factor, so the base part vanishes
    for (const auto& [k, c] : res.H0.modes())
        for (const auto& [mask, v] : c.components()) REQUIRE((mask & axis_mask(1)) != 0);

    // independent per-mode oracle for the circle average
    const Mask blade = axes_mask({6, 7});
    const double damp = 0.5 * kTwoPi * kTwoPi * sigma * sigma;
    double worst = 0;
    int checked = 0;
    for (int k6 = -K; k6 <= K; ++k6)
        for (int k7 = -K; k7 <= K; ++k7) {
            if (k6 == 0 && k7 == 0) continue;
            WaveVector k{};
            k[5] = k6;
            k[6] = k7;
            double kk = double(k6) * k6 + double(k7) * k7;
            CScalar expected = -std::polar(std::exp(-damp * kk),
                                           -kTwoPi * (k6 * 0.3 + k7 * 0.62)) /
                               (kTwoPi * kTwoPi * kk);
            worst = std::max(worst, std::abs(res.f0.mode(k).coeff(blade) - expected));
            ++checked;
        }
    REQUIRE(checked == (2 * K + 1) * (2 * K + 1) - 1);
    REQUIRE(worst <= 1e-15);
    REQUIRE(res.f0.mode(WaveVector{}).empty());  // zero-mean average

    // the pushed-forward equation holds against the stored right-hand side
    REQUIRE(l2_norm(laplacian(res.f0) - (res.h0 - res.delta_m)) <=
            1e-12 * l2_norm(res.h0 - res.delta_m));

    // the unit-blade projection of the solution is the higgs function, and
    // the stored field is its circle average
    G2Pair pair = build_g2_from_su3(SU3Structure::standard());
    FourierForm pi1 = decompose3(res.H0, pair).pi1;
    FourierForm expected_pi1 = map_modes(res.H0, 3, [&pair](const WaveVector&, const CForm& c) {
        return CForm::from_real(pair.phi) * (c.pair(pair.phi) / 7.0);
    });
    double pi1_norm = l2_norm(pi1);
    REQUIRE(l2_norm(pi1 - expected_pi1) <= 1e-12 * (1.0 + pi1_norm));
    REQUIRE(pi1_norm > 1e-3);
    for (const auto& [kk, c] : res.phi.modes()) {
        REQUIRE(kk[0] == 0);
        REQUIRE(std::abs(c.coeff(0) + res.H0.mode(kk).pair(pair.phi)) <= 1e-15);
    }
}

TEST_CASE("misaligned tangent runs only as a diagnostic negative control") {
    DivisorSpec control{axes_mask({2, 4, 5, 7}), {0.25, 0.5}, 0.1};
    REQUIRE_THROWS_AS(divisor_solve(control, 0.05, 4), std::invalid_argument);

    control.diagnostic = true;
    PushforwardResult res = divisor_solve(control, 0.05, 4);
    REQUIRE(res.residuals.pq_type >= 0.1);
    REQUIRE(res.residuals.pq_type == Catch::Approx(std::sqrt(0.5)).margin(1e-12));
    // the construction identities still hold; only the type conclusion fails
    REQUIRE(res.residuals.closure_of_f0 <= 1e-10);
    REQUIRE(res.residuals.poisson <= 1e-12);
    REQUIRE(res.g_theta_dependence == 0.0);
    // no product-pair blade pairs with the solution, so the higgs average dies
    REQUIRE(res.phi.is_zero());
    REQUIRE(res.dstar_gap == Catch::Approx(1.0));
}

TEST_CASE("divisor input validation") {
    DivisorSpec good{axes_mask({2, 3, 6, 7}), {0.2, 0.8}, 0.0};
    REQUIRE_NOTHROW(divisor_solve(good, 0.05, 2));

    DivisorSpec theta_tangent{axes_mask({1, 2, 3, 4}), {0.2, 0.8}, 0.0};
    REQUIRE_THROWS_AS(divisor_solve(theta_tangent, 0.05, 2), std::invalid_argument);
    DivisorSpec three{axes_mask({2, 3, 4}), {0.2, 0.8}, 0.0};
    REQUIRE_THROWS_AS(divisor_solve(three, 0.05, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(divisor_solve(good, -0.05, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(divisor_solve(good, 0.05, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(divisor_solve(good, 0.05, 2, -0.1), std::invalid_argument);
    DivisorSpec shifted = good;
    shifted.normal_offsets[1] = 1.0;
    REQUIRE_THROWS_AS(divisor_solve(shifted, 0.05, 2), std::invalid_argument);
    shifted.normal_offsets[1] = -0.25;
    REQUIRE_THROWS_AS(divisor_solve(shifted, 0.05, 2), std::invalid_argument);
}

TEST_CASE("independent circle width changes the solution but not the base current") {
    DivisorSpec spec{axes_mask({4, 5, 6, 7}), {0.125, 0.375}, 0.5};
    PushforwardResult narrow = divisor_solve(spec, 0.05, 4);
    PushforwardResult wide = divisor_solve(spec, 0.05, 4, 0.09);

    REQUIRE(l2_norm(narrow.delta_m - wide.delta_m) == 0.0);
    REQUIRE(l2_norm(narrow.H0 - wide.H0) > 1e-6);
    for (const PushforwardResult* r : {&narrow, &wide}) {
        REQUIRE(r->residuals.pq_type <= 1e-8);
        REQUIRE(r->residuals.poisson <= 1e-12);
        REQUIRE(r->dstar_gap <= 1e-12);
        REQUIRE(r->residuals.closure_of_f0 <= 1e-10);
    }
    // the base current depends only on the base width and offsets
    const double damp = 0.5 * kTwoPi * kTwoPi * 0.05 * 0.05;
    WaveVector probe{};
    probe[1] = 2;  // normal axes of this divisor are {2, 3}
    probe[2] = -1;
    CScalar expected = std::polar(std::exp(-damp * 5.0),
                                  -kTwoPi * (2 * 0.125 - 1 * 0.375));
    REQUIRE(std::abs(narrow.delta_m.mode(probe).coeff(axes_mask({2, 3})) - expected) <= 1e-15);
}
