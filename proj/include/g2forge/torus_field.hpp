#pragma once

/// Spectral construction of an abelian monopole field sourced by a flat
/// coordinate 3-torus inside (R/Z)^7, following the gerbe-connection recipe:
/// solve (Laplacian H0) = H - delta for the mollified unit current delta,
/// take the curvature F0 = d*H0 and the Higgs function from the scalar part
/// of H0, and verify the monopole relation *(F0 /\ psi) = d(higgs) together
/// with its closure, projection, and linking consequences. Every identity
/// used is exact per Fourier mode, so the residuals sit at rounding level
/// whatever the truncation.

#include <g2forge/form.hpp>
#include <g2forge/fourier.hpp>
#include <g2forge/g2reps.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace g2forge {

/// A flat 4-torus worth of coassociative (or negatively calibrated)
/// directions, recorded by its three normal axes and the normal offsets of
/// the submanifold. The complementary 4 axes must calibrate.
struct CoassocTorus {
    Mask normal_axes = 0;
    std::array<double, 3> offsets{};          // ordered by ascending normal axis
    Convention convention = Convention::standard;

    CoassocTorus(Mask normal, const std::array<double, 3>& offs,
                 Convention conv = Convention::standard)
        : normal_axes(normal), offsets(offs), convention(conv) {
        if (mask_degree(normal_axes) != 3)
            throw std::invalid_argument("CoassocTorus: need exactly 3 normal axes");
        for (double c : offsets)
            if (!(c >= 0.0 && c < 1.0))
                throw std::invalid_argument("CoassocTorus: offsets must lie in [0,1)");
        auto cal = calibration_check(tangent_axes(), G2Pair::model(convention));
        if (cal.classification != Calibration::coassociative &&
            cal.classification != Calibration::negatively_calibrated)
            throw std::invalid_argument(
                "CoassocTorus: the tangent 4-plane does not calibrate");
    }

    Mask tangent_axes() const { return mask_complement(normal_axes); }

    Calibration tangent_class() const {
        return calibration_check(tangent_axes(), G2Pair::model(convention)).classification;
    }

    /// Offset along a normal axis.
    double offset_of(int axis) const {
        std::size_t slot = 0;
        for (int a = 1; a <= kDim; ++a) {
            if (!(normal_axes & axis_mask(a))) continue;
            if (a == axis) return offsets[slot];
            ++slot;
        }
        throw std::invalid_argument("CoassocTorus: axis is not normal");
    }

    /// Point of the submanifold: normal coordinates at the offsets,
    /// tangential coordinates zero.
    std::array<double, 7> base_point() const {
        std::array<double, 7> x{};
        std::size_t slot = 0;
        for (int a = 1; a <= kDim; ++a)
            if (normal_axes & axis_mask(a)) x[static_cast<std::size_t>(a - 1)] = offsets[slot++];
        return x;
    }
};

/// The harmonic representative of the dual class: the constant normal
/// volume form, which integrates to one over the dual 3-cycle.
inline FourierForm harmonic_rep(const CoassocTorus& n, int truncation) {
    return FourierForm::constant(Form::monomial(n.normal_axes), truncation);
}

/// Gaussian-mollified unit current concentrated on the submanifold: modes
/// supported on the normal axes with coefficient
/// exp(-2 pi^2 sigma^2 |k|^2) exp(-2 pi i k.c) on the normal volume blade.
/// The constant mode is exactly one (unit mass).
inline FourierForm delta_current(const CoassocTorus& n, double sigma, int truncation) {
    if (!(sigma > 0)) throw std::invalid_argument("delta_current: sigma must be positive");
    if (truncation < 1) throw std::invalid_argument("delta_current: truncation must be >= 1");
    FourierForm out(3, truncation);
    std::array<int, 3> axes{};
    std::size_t slot = 0;
    for (int a = 1; a <= kDim; ++a)
        if (n.normal_axes & axis_mask(a)) axes[slot++] = a;

    const double damp = 0.5 * kTwoPi * kTwoPi * sigma * sigma;  // 2 pi^2 sigma^2
    for (int k1 = -truncation; k1 <= truncation; ++k1)
        for (int k2 = -truncation; k2 <= truncation; ++k2)
            for (int k3 = -truncation; k3 <= truncation; ++k3) {
                WaveVector k{};
                k[static_cast<std::size_t>(axes[0] - 1)] = k1;
                k[static_cast<std::size_t>(axes[1] - 1)] = k2;
                k[static_cast<std::size_t>(axes[2] - 1)] = k3;
                double kk = static_cast<double>(norm_squared(k));
                double phase = k1 * n.offsets[0] + k2 * n.offsets[1] + k3 * n.offsets[2];
                CScalar coeff = std::polar(std::exp(-damp * kk), -kTwoPi * phase);
                out.set_mode(k, CForm::monomial(n.normal_axes, coeff));
            }
    out.assert_real();
    return out;
}

/// Per-mode type decomposition of a degree-3 field under the model G2
/// structure; the projections are constant rational matrices.
struct FourierDecomp3 {
    FourierForm pi1;
    FourierForm pi7;
    FourierForm pi27;
};

namespace tfdetail {

inline std::vector<std::vector<double>> to_double_matrix(const RatMat& m) {
    std::vector<std::vector<double>> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i].resize(m[i].size());
        for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = to_double(m[i][j]);
    }
    return out;
}

inline CForm apply_projection(const std::vector<std::vector<double>>& proj,
                              const std::vector<Mask>& basis, const CForm& c) {
    std::vector<CScalar> in(basis.size(), 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) in[j] = c.coeff(basis[j]);
    CForm out;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CScalar acc = 0;
        for (std::size_t j = 0; j < basis.size(); ++j)
            if (in[j] != CScalar(0.0) && proj[i][j] != 0.0) acc += proj[i][j] * in[j];
        out.add(basis[i], acc);
    }
    return out;
}

} // namespace tfdetail

inline FourierDecomp3 decompose3(const FourierForm& f,
                                 const G2Pair& pair = G2Pair::model()) {
    if (f.degree() != 3)
        throw std::invalid_argument("decompose3: need a degree-3 field");
    ThreeFormProjectors proj = three_form_projectors(pair);
    const std::vector<Mask>& basis = masks_of_degree(3);
    auto p1 = tfdetail::to_double_matrix(proj.pi1);
    auto p7 = tfdetail::to_double_matrix(proj.pi7);
    auto p27 = tfdetail::to_double_matrix(proj.pi27);
    FourierDecomp3 out{FourierForm(3, f.truncation()), FourierForm(3, f.truncation()),
                       FourierForm(3, f.truncation())};
    out.pi1 = map_modes(f, 3, [&](const WaveVector&, const CForm& c) {
        return tfdetail::apply_projection(p1, basis, c);
    });
    out.pi7 = map_modes(f, 3, [&](const WaveVector&, const CForm& c) {
        return tfdetail::apply_projection(p7, basis, c);
    });
    out.pi27 = map_modes(f, 3, [&](const WaveVector&, const CForm& c) {
        return tfdetail::apply_projection(p27, basis, c);
    });
    return out;
}

struct GerbeResiduals {
    double monopole = 0;    // |*(F0 ^ psi) - d(higgs)| / |d(higgs)|
    double closure = 0;     // |d(H0)|
    double pi7_of_h0 = 0;   // |pi7(H0)|
    double curvature = 0;   // |d(F0) - (H - delta)|
};

struct GerbeSolveResult {
    CoassocTorus torus;
    double sigma = 0;
    int truncation = 0;
    FourierForm H;      // harmonic representative
    FourierForm delta;  // mollified current
    FourierForm H0;     // zero-mean potential, Laplacian H0 = H - delta
    FourierForm F0;     // curvature d*H0
    FourierForm a;      // scalar with pi1(H0) = -a phi
    FourierForm higgs;  // 7a
    GerbeResiduals residuals;
};

/// Full solve: potential, curvature, Higgs scalar, and the residual suite.
inline GerbeSolveResult gerbe_connection(const CoassocTorus& n, double sigma, int truncation) {
    G2Pair model = G2Pair::model(n.convention);
    GerbeSolveResult r{n,
                       sigma,
                       truncation,
                       harmonic_rep(n, truncation),
                       delta_current(n, sigma, truncation),
                       FourierForm(3, truncation),
                       FourierForm(2, truncation),
                       FourierForm(0, truncation),
                       FourierForm(0, truncation),
                       {}};
    FourierForm forcing = r.H - r.delta;
    r.H0 = solve_poisson(forcing);
    r.F0 = dstar(r.H0);

    const double phi_norm = to_double(inner(model.phi, model.phi));  // 7
    r.a = map_modes(r.H0, 0, [&](const WaveVector&, const CForm& c) {
        CForm out;
        out.add(0, -c.pair(model.phi) / phi_norm);
        return out;
    });
    r.higgs = r.a * CScalar(phi_norm, 0.0);

    FourierForm monopole_lhs = hodge(wedge(r.F0, FourierForm::constant(model.psi, truncation)));
    FourierForm dh = d(r.higgs);
    double denom = l2_norm(dh);
    double gap = l2_norm(monopole_lhs - dh);
    r.residuals.monopole = denom > 0 ? gap / denom : gap;
    r.residuals.curvature = l2_norm(d(r.F0) - forcing);
    r.residuals.closure = l2_norm(d(r.H0));
    r.residuals.pi7_of_h0 = l2_norm(decompose3(r.H0, model).pi7);
    return r;
}

namespace tfdetail {

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(order), 0.0);
    weights.assign(static_cast<std::size_t>(order), 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < order; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int n = 2; n <= order; ++n) {
                double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            double dp = order * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = x;
        double p0 = 1.0, p1 = x;
        for (int n = 2; n <= order; ++n) {
            double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
            p0 = p1;
            p1 = p2;
        }
        double dp = order * (x * p1 - p0) / (x * x - 1.0);
        weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

} // namespace tfdetail

/// Mass of the current enclosed by the sphere of radius r in the normal
/// 3-plane around `center`, computed through Stokes: the integral of the
/// harmonic form over the enclosed ball minus the outward flux of F0
/// through the sphere. Since d(F0) = H - delta, this equals the enclosed
/// mollified mass, which converges to the integer linking number 1.
inline double linking_number(const GerbeSolveResult& result, const std::array<double, 7>& center,
                             double radius, int quad_order = 26) {
    if (!(radius > 3.0 * result.sigma && radius < 0.5))
        throw std::invalid_argument("linking_number: need 3 sigma < radius < 1/2");
    if (quad_order < 2) throw std::invalid_argument("linking_number: quadrature order too small");

    std::array<int, 3> axes{};
    std::size_t slot = 0;
    for (int a = 1; a <= kDim; ++a)
        if (result.torus.normal_axes & axis_mask(a)) axes[slot++] = a;

    // dual vector field of F0 in the normal 3-plane: V_c = (1/2) eps_cab F_ab
    const Mask m01 = static_cast<Mask>(axis_mask(axes[0]) | axis_mask(axes[1]));
    const Mask m02 = static_cast<Mask>(axis_mask(axes[0]) | axis_mask(axes[2]));
    const Mask m12 = static_cast<Mask>(axis_mask(axes[1]) | axis_mask(axes[2]));

    std::vector<double> nodes, weights;
    tfdetail::gauss_legendre(quad_order, nodes, weights);
    const double pi = 3.14159265358979323846;
    const int azimuth = 2 * quad_order;

    double flux = 0;
    for (int i = 0; i < quad_order; ++i) {
        double ct = nodes[static_cast<std::size_t>(i)];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int j = 0; j < azimuth; ++j) {
            double az = kTwoPi * j / azimuth;
            std::array<double, 3> nhat{st * std::cos(az), st * std::sin(az), ct};
            std::array<double, 7> x = center;
            for (std::size_t c = 0; c < 3; ++c)
                x[static_cast<std::size_t>(axes[c] - 1)] += radius * nhat[c];
            CForm f = evaluate(result.F0, x);
            double vdotn = f.coeff(m12).real() * nhat[0] - f.coeff(m02).real() * nhat[1] +
                           f.coeff(m01).real() * nhat[2];
            flux += weights[static_cast<std::size_t>(i)] * vdotn;
        }
    }
    flux *= radius * radius * (kTwoPi / azimuth);

    double h_coeff = result.H.mode(WaveVector{}).coeff(result.torus.normal_axes).real();
    double volume_term = h_coeff * (4.0 / 3.0) * pi * radius * radius * radius;
    return volume_term - flux;
}

struct MonopoleCorrection {
    FourierForm b;        // potential 1-form, Laplacian b = -*(F' ^ psi)
    FourierForm a_corr;   // connection correction *(db ^ psi)
    FourierForm higgs;    // -d*(b)
    FourierForm F;        // corrected curvature F' + d(a_corr)
    double monopole_residual = 0;  // |*(F ^ psi) - d(higgs)|, backward error against the input scale
    double curvature_change = 0;   // |d(F) - d(F')|
};

/// Turn a 2-form field into a monopole by the exact correction step: solve
/// the Poisson problem for the potential b and gauge-shift the curvature.
/// The constant mode of *(F' ^ psi) obstructs the solve and is reported.
inline MonopoleCorrection monopole_correction(const FourierForm& fprime,
                                              const G2Pair& model = G2Pair::model(),
                                              double tol = 1e-12) {
    if (fprime.degree() != 2)
        throw std::invalid_argument("monopole_correction: need a degree-2 field");
    FourierForm psi = FourierForm::constant(model.psi, fprime.truncation());
    FourierForm rhs = hodge(wedge(fprime, psi)) * CScalar(-1.0, 0.0);
    MonopoleCorrection out{FourierForm(1, fprime.truncation()),
                           FourierForm(1, fprime.truncation()),
                           FourierForm(0, fprime.truncation()),
                           FourierForm(2, fprime.truncation())};
    out.b = solve_poisson(rhs, tol);
    out.a_corr = hodge(wedge(d(out.b), psi));
    out.higgs = dstar(out.b) * CScalar(-1.0, 0.0);
    out.F = fprime + d(out.a_corr);

    FourierForm lhs = hodge(wedge(out.F, psi));
    FourierForm dh = d(out.higgs);
    double denom = std::max(l2_norm(dh), l2_norm(fprime));
    double gap = l2_norm(lhs - dh);
    out.monopole_residual = denom > 0 ? gap / denom : gap;
    out.curvature_change = l2_norm(d(out.F) - d(fprime));
    return out;
}

struct SplitReport {
    double baseline_norm = 0;          // |F0(1) + F0(2)| for the plain split
    double summed_difference = 0;      // relative change of the summed curvature
    double chart_difference = 0;       // relative change of the first chart alone
    bool pass = false;
};

/// Re-split the harmonic representative of two parallel currents by an
/// exact 3-form d(gauge) and verify that the summed curvature is unchanged
/// while the per-chart fields genuinely move.
inline SplitReport split_solve(const CoassocTorus& n1, const CoassocTorus& n2,
                               const FourierForm& gauge, double sigma, int truncation) {
    if (n1.normal_axes != n2.normal_axes)
        throw std::invalid_argument("split_solve: currents must be parallel");
    if (gauge.degree() != 2)
        throw std::invalid_argument("split_solve: gauge field must have degree 2");

    auto chart_curvature = [&](const CoassocTorus& n, const FourierForm& shift) {
        FourierForm forcing = harmonic_rep(n, truncation) + shift - delta_current(n, sigma, truncation);
        return dstar(solve_poisson(forcing));
    };

    FourierForm zero3(3, truncation);
    FourierForm dg = d(gauge);
    FourierForm f0_plain_1 = chart_curvature(n1, zero3);
    FourierForm f0_plain = f0_plain_1 + chart_curvature(n2, zero3);
    FourierForm f0_shifted_1 = chart_curvature(n1, dg);
    FourierForm f0_shifted = f0_shifted_1 + chart_curvature(n2, zero3 - dg);

    SplitReport rep;
    rep.baseline_norm = l2_norm(f0_plain);
    double denom = rep.baseline_norm > 0 ? rep.baseline_norm : 1.0;
    rep.summed_difference = l2_norm(f0_plain - f0_shifted) / denom;
    double chart_denom = l2_norm(f0_plain_1);
    rep.chart_difference = l2_norm(f0_plain_1 - f0_shifted_1) / (chart_denom > 0 ? chart_denom : 1.0);
    rep.pass = rep.summed_difference <= 1e-10;
    return rep;
}

struct Lemma3Report {
    double f0_witness = 0;  // |F0 - d*(H0)|
    double closure = 0;     // |d(H0)|
    double pi7_of_df0 = 0;  // |pi7(d F0)|
    bool pass = false;
};

/// Check the closed-potential witnesses of a solve: the curvature is d* of
/// the closed 3-form H0, and the 7-type part of its exterior derivative
/// vanishes.
inline Lemma3Report lemma3_check(const GerbeSolveResult& result, double tol = 1e-9) {
    Lemma3Report rep;
    rep.f0_witness = l2_norm(result.F0 - dstar(result.H0));
    rep.closure = l2_norm(d(result.H0));
    FourierForm df0 = d(result.F0);
    rep.pi7_of_df0 = l2_norm(decompose3(df0, G2Pair::model(result.torus.convention)).pi7);
    rep.pass = rep.f0_witness <= tol && rep.closure <= tol && rep.pi7_of_df0 <= tol;
    return rep;
}

} // namespace g2forge
