#pragma once

// Run configuration, check records, and the runners behind the command line
// tool. Runners are pure: they return a report plus optional field dumps and
// never touch the filesystem. Serialization (JSON report, CSV field dumps,
// hashed manifest) lives at the bottom.

#include <g2forge/cech.hpp>
#include <g2forge/chern_weil.hpp>
#include <g2forge/cy_product.hpp>
#include <g2forge/g2reps.hpp>
#include <g2forge/torus_field.hpp>

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace g2forge {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "g2forge";
inline constexpr const char* kToolVersion = "1.0.0";

struct RunConfig {
    Convention convention = Convention::standard;
    int truncation = 12;
    double sigma = 0.03;
    double radius = 0.25;
    int quad_order = 26;
    unsigned int seed = 20260815u;
    std::string out_dir;  // empty: no artifacts are written

    void validate() const {
        if (truncation < 1)
            throw std::invalid_argument("config: truncation must be at least 1");
        if (!(sigma > 0.0 && 3.0 * sigma < radius && radius < 0.5))
            throw std::invalid_argument("config: need 0 < 3 sigma < radius < 1/2");
        if (quad_order < 2)
            throw std::invalid_argument("config: quadrature order must be at least 2");
    }
};

inline std::string to_string(Convention c) {
    return c == Convention::standard ? "default" : "alt";
}

inline Convention convention_from(const std::string& name) {
    if (name == "default" || name == "standard") return Convention::standard;
    if (name == "alt") return Convention::alt;
    throw std::invalid_argument("unknown convention: " + name);
}

enum class CheckStatus { pass, fail, obstructed };

inline std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::obstructed: return "obstructed";
    }
    return "?";
}

/// One verification record. The anchor is a stable slug naming the claim the
/// check exercises, so report consumers can key on it across versions.
struct Check {
    std::string name;
    CheckStatus status = CheckStatus::fail;
    std::string anchor;
    std::map<std::string, double> residuals;
    std::map<std::string, std::string> values;
    std::string note;
};

struct Report {
    RunConfig config;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }

    void sort() {
        std::sort(checks.begin(), checks.end(),
                  [](const Check& a, const Check& b) { return a.name < b.name; });
    }

    bool any(CheckStatus s) const {
        return std::any_of(checks.begin(), checks.end(),
                           [s](const Check& c) { return c.status == s; });
    }
};

/// 0: all pass, 1: something failed, 2: obstructed but nothing failed.
inline int exit_code(const Report& r) {
    if (r.any(CheckStatus::fail)) return 1;
    if (r.any(CheckStatus::obstructed)) return 2;
    return 0;
}

/// A sampled field destined for fields/<name>.csv.
struct FieldDump {
    std::string name;
    FourierForm field;
    GridSpec grid;
};

struct RunOutput {
    Report report;
    std::vector<FieldDump> fields;
};

inline void merge(RunOutput& into, RunOutput&& from) {
    for (auto& c : from.report.checks) into.report.add(std::move(c));
    for (auto& f : from.fields) into.fields.push_back(std::move(f));
}

namespace repdetail {

inline std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string axes_list(Mask m) {
    std::string s;
    for (int a : mask_axes(m)) {
        if (!s.empty()) s += ',';
        s += static_cast<char>('0' + a);
    }
    return s;
}

inline std::string axes_digits(Mask m) {
    std::string s;
    for (int a : mask_axes(m)) s += static_cast<char>('0' + a);
    return s;
}

inline Check residual_check(std::string name, std::string anchor, std::string label,
                            double value, double tol) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.residuals[label] = value;
    c.values["tolerance"] = fmt(tol);
    c.status = value <= tol ? CheckStatus::pass : CheckStatus::fail;
    return c;
}

/// Deterministic real trigonometric field: `count` random modes within the
/// box [-kmax, kmax]^7 added together with their conjugate reflections.
inline FourierForm random_real_field(std::mt19937& rng, int degree, int truncation,
                                     int count, int kmax) {
    if (kmax > truncation) kmax = truncation;
    FourierForm f(degree, truncation);
    std::uniform_int_distribution<int> wave(-kmax, kmax);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    const auto& blades = masks_of_degree(degree);
    std::uniform_int_distribution<std::size_t> pick(0, blades.size() - 1);
    for (int t = 0; t < count; ++t) {
        WaveVector k{};
        for (auto& ki : k) ki = wave(rng);
        Mask blade = blades[pick(rng)];
        CScalar c(coef(rng), coef(rng));
        WaveVector mk{};
        for (std::size_t i = 0; i < k.size(); ++i) mk[i] = -k[i];
        CForm plus = f.mode(k);
        plus.add(blade, c);
        f.set_mode(k, plus);
        CForm minus = f.mode(mk);
        minus.add(blade, std::conj(c));
        f.set_mode(mk, minus);
    }
    return f;
}

} // namespace repdetail

// ------------------------------------------------------------- identities

/// Exact identity battery: scalar contraction constants, projector algebra,
/// kernel characterizations, and the calibration census. A broken override
/// 3-form surfaces as a failing check, not an exception.
inline RunOutput run_identities(const RunConfig& cfg, const Form* phi_override = nullptr) {
    cfg.validate();
    using repdetail::fmt;
    RunOutput out;
    out.report.config = cfg;
    try {
        G2Pair pair = phi_override ? G2Pair::from_phi(*phi_override, "override")
                                   : G2Pair::model(cfg.convention);
        IdentityReport rep = identity_suite(pair);

        Check constants;
        constants.name = "identities/constants";
        constants.anchor = "double-dualization-constants-minus-four-and-three";
        constants.values["convention"] = rep.convention;
        constants.values["cA"] = to_string(rep.cA);
        constants.values["cB"] = to_string(rep.cB);
        constants.values["lambda7"] = to_string(rep.lambda7);
        constants.values["lambda14"] = to_string(rep.lambda14);
        constants.values["standard_orientation"] = rep.standard_orientation ? "yes" : "no";
        // the eigenvalue pair flips sign with the chirality of the pair;
        // the contraction constants and the trace relation do not
        bool ok = rep.cA == -4 && rep.cB == 3 &&
                  (rep.lambda14 == 1 || rep.lambda14 == -1) &&
                  7 * rep.lambda7 + 14 * rep.lambda14 == 0;
        constants.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(constants);

        Check dims;
        dims.name = "identities/type-dimensions";
        dims.anchor = "two-and-three-form-type-dimensions";
        for (const auto& [key, v] : rep.dimensions) dims.values[key] = std::to_string(v);
        bool dims_ok = true;
        for (const auto& c : rep.checks)
            if ((c.name == "deg2-projectors-complete" || c.name == "deg3-dimensions-1-7-27") &&
                !c.pass)
                dims_ok = false;
        dims.status = dims_ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(dims);

        Check battery;
        battery.name = "identities/battery";
        battery.anchor = "projector-algebra-kernels-and-calibration-census";
        battery.values["checks"] = std::to_string(rep.checks.size());
        std::string failed;
        for (const auto& c : rep.checks)
            if (!c.pass) {
                if (!failed.empty()) failed += "; ";
                failed += c.name;
            }
        battery.values["failed"] = failed.empty() ? "none" : failed;
        battery.status = rep.all_pass() ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(battery);
    } catch (const std::exception& e) {
        Check broken;
        broken.name = "identities/battery";
        broken.anchor = "projector-algebra-kernels-and-calibration-census";
        broken.status = CheckStatus::fail;
        broken.note = e.what();
        out.report.add(broken);
    }
    return out;
}

// -------------------------------------------------------------- calibrate

/// Classify coordinate subspaces; calibrated 4-subspaces also get the
/// normal-frame duality verdict.
inline RunOutput run_calibrate(const RunConfig& cfg, std::vector<Mask> subsets = {}) {
    cfg.validate();
    if (subsets.empty()) subsets = {axes_mask({1, 2, 3}), axes_mask({4, 5, 6, 7})};
    G2Pair pair = G2Pair::model(cfg.convention);
    RunOutput out;
    out.report.config = cfg;
    for (Mask s : subsets) {
        CalibrationReport rep = calibration_check(s, pair);
        Check c;
        c.name = "calibrate/" + repdetail::axes_digits(s);
        c.anchor = "coordinate-subspace-calibration-type";
        c.values["axes"] = repdetail::axes_list(s);
        c.values["classification"] = to_string(rep.classification);
        c.values["restriction"] = format_form(rep.restriction);
        bool ok = true;
        if (mask_degree(s) == 4 && (rep.classification == Calibration::coassociative ||
                                    rep.classification == Calibration::negatively_calibrated)) {
            NormalFrameReport frame = normal_frame_check(s, pair);
            c.anchor = "normal-contractions-restrict-to-one-duality-type";
            c.values["frame"] = frame.duality_sign == -1  ? "anti-self-dual"
                                : frame.duality_sign == 1 ? "self-dual"
                                                          : "mixed";
            c.values["orientation"] = frame.orientation_sign > 0 ? "+1" : "-1";
            ok = frame.pass;
        }
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(c);
    }
    return out;
}

// ------------------------------------------------------------------ gerbe

struct GerbeOptions {
    Mask normal_axes = axes_mask({1, 2, 3});
    std::array<double, 3> offsets{0.5, 0.5, 0.5};
};

/// Integral of the mollified current over the ball of radius r centered on
/// the current, evaluated mode by mode: the radial factor is the Fourier
/// transform of the ball indicator. The linking quadrature must reproduce
/// this number at any truncation; its distance from 1 measures convergence.
inline double enclosed_mass(const GerbeSolveResult& result, double radius) {
    const double pi = 3.14159265358979323846;
    std::array<double, 7> center{};
    std::size_t slot = 0;
    for (int a = 1; a <= kDim; ++a)
        if (result.torus.normal_axes & axis_mask(a))
            center[static_cast<std::size_t>(a - 1)] = result.torus.offsets[slot++];

    double total = 0;
    for (const auto& [k, c] : result.delta.modes()) {
        CScalar coeff = c.coeff(result.torus.normal_axes);
        if (coeff == CScalar(0.0, 0.0)) continue;
        double phase = 0, k2 = 0;
        for (std::size_t i = 0; i < 7; ++i) {
            phase += k[i] * center[i];
            k2 += static_cast<double>(k[i]) * k[i];
        }
        double ball;
        if (k2 == 0) {
            ball = (4.0 / 3.0) * pi * radius * radius * radius;
        } else {
            double kn = std::sqrt(k2);
            double u = kTwoPi * kn * radius;
            ball = (std::sin(u) - u * std::cos(u)) / (2.0 * pi * pi * kn * kn * kn);
        }
        total += (coeff * std::polar(1.0, kTwoPi * phase)).real() * ball;
    }
    return total;
}

/// Solve the gerbe connection for one coassociative torus and verify the
/// construction: residual suite, closed-potential witnesses, linking flux,
/// splitting invariance, and the correction of a random closed field.
inline RunOutput run_gerbe(const RunConfig& cfg, const GerbeOptions& opt = {}) {
    cfg.validate();
    using repdetail::fmt;
    using repdetail::residual_check;
    RunOutput out;
    out.report.config = cfg;

    CoassocTorus torus(opt.normal_axes, opt.offsets, cfg.convention);
    GerbeSolveResult solve = gerbe_connection(torus, cfg.sigma, cfg.truncation);

    Check monopole = residual_check("gerbe/monopole", "curvature-wedge-psi-matches-higgs-differential",
                                    "monopole", solve.residuals.monopole, 1e-9);
    monopole.values["normal_axes"] = repdetail::axes_list(opt.normal_axes);
    out.report.add(std::move(monopole));
    out.report.add(residual_check("gerbe/closure", "potential-three-form-is-closed", "closure",
                                  solve.residuals.closure, 1e-10));
    out.report.add(residual_check("gerbe/pi7", "potential-has-no-seven-type-component", "pi7",
                                  solve.residuals.pi7_of_h0, 1e-12));
    out.report.add(residual_check("gerbe/curvature-equation", "curvature-derivative-recovers-current",
                                  "curvature", solve.residuals.curvature, 1e-10));

    Lemma3Report witness = lemma3_check(solve);
    {
        Check c;
        c.name = "gerbe/witness";
        c.anchor = "curvature-is-codifferential-of-closed-potential";
        c.residuals["f0_witness"] = witness.f0_witness;
        c.residuals["closure"] = witness.closure;
        c.residuals["pi7_of_df0"] = witness.pi7_of_df0;
        c.values["tolerance"] = fmt(1e-9);
        c.status = witness.pass ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    {
        std::array<double, 7> center{};
        std::size_t slot = 0;
        for (int a = 1; a <= kDim; ++a)
            if (opt.normal_axes & axis_mask(a))
                center[static_cast<std::size_t>(a - 1)] = opt.offsets[slot++];
        double link = linking_number(solve, center, cfg.radius, cfg.quad_order);
        double mass = enclosed_mass(solve, cfg.radius);
        Check c;
        c.name = "gerbe/linking";
        c.anchor = "unit-flux-through-the-normal-sphere";
        c.residuals["quadrature_gap"] = std::abs(link - mass);
        c.values["linking"] = fmt(link);
        c.values["enclosed_mass"] = fmt(mass);
        c.values["gap_to_one"] = fmt(std::abs(link - 1.0));
        bool converged = std::abs(mass - 1.0) <= 0.02;
        bool ok = std::abs(link - mass) <= 5e-3 && (std::abs(link - 1.0) <= 0.02 || !converged);
        if (!converged)
            c.note = "truncation-limited convergence; the enclosed mollified mass at this "
                     "truncation is " +
                     fmt(mass);
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    std::mt19937 rng(cfg.seed);
    {
        auto wrap = [](double v) { return v - std::floor(v); };
        CoassocTorus second(opt.normal_axes,
                            {wrap(opt.offsets[0] + 0.29), wrap(opt.offsets[1] + 0.41),
                             wrap(opt.offsets[2] + 0.13)},
                            cfg.convention);
        FourierForm gauge = repdetail::random_real_field(rng, 2, cfg.truncation, 6, 2);
        SplitReport sp = split_solve(torus, second, gauge, cfg.sigma, cfg.truncation);
        Check c;
        c.name = "gerbe/split";
        c.anchor = "summed-curvature-is-gauge-invariant";
        c.residuals["summed_difference"] = sp.summed_difference;
        c.values["chart_difference"] = fmt(sp.chart_difference);
        c.values["tolerance"] = fmt(1e-10);
        c.status = sp.pass && sp.chart_difference > 1e-12 ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    {
        Check c;
        c.name = "gerbe/correction";
        c.anchor = "closed-two-form-corrects-to-a-monopole";
        c.values["tolerance"] = fmt(1e-9);
        FourierForm a_rand(1, cfg.truncation);
        FourierForm fprime(2, cfg.truncation);
        do {
            a_rand = repdetail::random_real_field(rng, 1, cfg.truncation, 6, 2);
            fprime = d(a_rand);
        } while (l2_norm(fprime) == 0.0);
        try {
            MonopoleCorrection fix = monopole_correction(fprime, G2Pair::model(cfg.convention));
            c.residuals["monopole"] = fix.monopole_residual;
            c.residuals["curvature_change"] = fix.curvature_change;
            c.status = fix.monopole_residual <= 1e-9 && fix.curvature_change <= 1e-10
                           ? CheckStatus::pass
                           : CheckStatus::fail;
        } catch (const ObstructionError& e) {
            c.status = CheckStatus::obstructed;
            c.residuals["obstruction"] = e.obstruction_norm;
            c.note = e.what();
        }
        out.report.add(std::move(c));
    }

    GridSpec grid;
    for (int a : mask_axes(opt.normal_axes)) grid.points[static_cast<std::size_t>(a - 1)] = 8;
    out.fields.push_back({"gerbe_f0", solve.F0, grid});
    out.fields.push_back({"gerbe_h0", solve.H0, grid});
    out.fields.push_back({"gerbe_higgs", solve.higgs, grid});
    return out;
}

// ------------------------------------------------------------- chern-weil

/// Polynomial adjunction identity plus the signature/Euler pairing table
/// over the built-in catalog and any user-supplied manifolds.
inline RunOutput run_chern_weil(const RunConfig& cfg,
                                const std::vector<FourManifold>& extra = {}) {
    cfg.validate();
    RunOutput out;
    out.report.config = cfg;

    AdjunctionReport adj = verify_adjunction_identity();
    {
        Check c;
        c.name = "chern-weil/adjunction";
        c.anchor = "anti-self-dual-pontryagin-adjunction";
        c.values["asd_coefficients"] = "(" + std::to_string(adj.coefficients_asd.first) + ", " +
                                       std::to_string(adj.coefficients_asd.second) + ")";
        c.values["sd_coefficients"] = "(" + std::to_string(adj.coefficients_sd.first) + ", " +
                                      std::to_string(adj.coefficients_sd.second) + ")";
        bool ok = adj.pass && adj.coefficients_asd == std::pair<long long, long long>{6, -2} &&
                  adj.coefficients_sd == std::pair<long long, long long>{6, 2};
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    const std::map<std::string, long long> pinned{{"T4", 0}, {"S4", -4}, {"K3", -144}};
    std::vector<FourManifold> rows = builtin_catalog();
    rows.insert(rows.end(), extra.begin(), extra.end());
    for (const FourManifold& m : rows) {
        m.validate();
        PairingReport rep = pairing(m);
        Check c;
        c.name = "chern-weil/pairing/" + m.name;
        c.anchor = "six-tau-minus-two-chi-pairing";
        c.values["tau"] = std::to_string(rep.tau);
        c.values["chi"] = std::to_string(rep.chi);
        c.values["pairing"] = std::to_string(rep.value);
        c.values["classification"] = to_string(rep.classification);
        c.values["tau_vs_chi"] = rep.tau_vs_chi;
        for (const auto& n : rep.notes) {
            if (!c.note.empty()) c.note += "; ";
            c.note += n;
        }
        bool ok = rep.value == 6ll * rep.tau - 2ll * rep.chi;
        if (auto it = pinned.find(m.name); it != pinned.end()) ok = ok && rep.value == it->second;
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }
    return out;
}

// ------------------------------------------------------------------- cech

namespace repdetail {

inline std::string group_name(const CohomologyGroup& g) {
    std::string s;
    if (g.free_rank == 1) s = "Z";
    else if (g.free_rank > 1) s = "Z^" + std::to_string(g.free_rank);
    for (const auto& t : g.torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + t.str();
    }
    return s.empty() ? "0" : s;
}

} // namespace repdetail

/// Integer degree-3 classes of the cubical 7-torus, the additivity of dual
/// subtorus classes, and (optionally) the cohomology of a user complex.
inline RunOutput run_cech(const RunConfig& cfg,
                          const std::vector<std::vector<int>>* facets = nullptr) {
    cfg.validate();
    RunOutput out;
    out.report.config = cfg;

    CubicalTorus torus(7, 2);
    {
        CohomologyGroup h3 = cohomology(torus.complex(), 3);
        Check c;
        c.name = "cech/torus-classes";
        c.anchor = "degree-three-classes-of-the-seven-torus";
        c.values["H3"] = repdetail::group_name(h3);
        c.values["free_rank"] = std::to_string(h3.free_rank);
        c.values["torsion"] = h3.torsion.empty() ? "none" : "present";
        c.status = h3.free_rank == 35 && h3.torsion.empty() ? CheckStatus::pass
                                                            : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    {
        GerbeClass a = pd_cocycle(torus, axes_mask({4, 5, 6, 7}));
        GerbeClass b = pd_cocycle(torus, axes_mask({2, 3, 4, 5}));
        bool additive = true;
        GerbeClass ab = tensor(a, b);
        for (std::size_t i = 0; i < ab.coordinates.size(); ++i)
            if (ab.coordinates[i] != a.coordinates[i] + b.coordinates[i]) additive = false;
        GerbeClass minus2 = scale(a, -2);
        for (std::size_t i = 0; i < minus2.coordinates.size(); ++i)
            if (minus2.coordinates[i] != -2 * a.coordinates[i]) additive = false;
        bool unital = true;
        const auto& masks3 = torus.masks_of_dimension(3);
        for (std::size_t i = 0; i < masks3.size(); ++i) {
            long long expect = masks3[i] == mask_complement(axes_mask({4, 5, 6, 7})) ? 1 : 0;
            if (a.coordinates[i] != expect) unital = false;
        }
        Check c;
        c.name = "cech/dual-classes";
        c.anchor = "subtorus-class-map-is-an-additive-homomorphism";
        c.values["additive"] = additive ? "yes" : "no";
        c.values["unit_coordinate"] = unital ? "yes" : "no";
        c.values["inverse_cancels"] = is_trivial(tensor(a, inverse(a))) ? "yes" : "no";
        c.status = additive && unital && is_trivial(tensor(a, inverse(a)))
                       ? CheckStatus::pass
                       : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    if (facets) {
        FiniteComplex x = simplicial_complex(*facets);
        auto groups = cohomology_all(x);
        long long euler_ranks = 0, euler_cells = 0;
        Check c;
        c.name = "cech/complex";
        c.anchor = "cohomology-matches-euler-count";
        for (int k = 0; k <= x.dimension(); ++k) {
            const auto& g = groups[static_cast<std::size_t>(k)];
            c.values["H" + std::to_string(k)] = repdetail::group_name(g);
            long long sign = k % 2 == 0 ? 1 : -1;
            euler_ranks += sign * g.free_rank;
            euler_cells += sign * x.cells(k);
        }
        c.values["euler"] = std::to_string(euler_cells);
        c.status = euler_ranks == euler_cells ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }
    return out;
}

// -------------------------------------------------------------------- toy

/// Product-structure pipeline: pushforward table, coassociative census,
/// the divisor solve with its type residuals, and the non-complex control.
inline RunOutput run_toy(const RunConfig& cfg) {
    cfg.validate();
    using repdetail::fmt;
    using repdetail::residual_check;
    RunOutput out;
    out.report.config = cfg;

    SU3Structure s = SU3Structure::standard();
    G2Pair pair = build_g2_from_su3(s);
    Form dtheta = Form::monomial(axis_mask(ComplexPairing::theta_axis));

    {
        Check c;
        c.name = "toy/pushforward-table";
        c.anchor = "circle-fiber-integration-table";
        bool ok = true;
        auto row = [&](const std::string& label, const Form& input, const Form& expect) {
            Form got = pushforward(input);
            c.values[label] = format_form(got);
            if (got != expect) ok = false;
        };
        row("dtheta^omega", wedge(dtheta, s.kahler), s.kahler);
        row("omega", s.kahler, Form{});
        row("phi", pair.phi, s.kahler);
        row("psi", pair.psi, s.holvol_im * Rational(-1));
        row("dtheta", dtheta, Form::monomial(0));
        c.status = ok ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    {
        int divisors = 0, circles = 0, none = 0;
        bool typed = true;
        std::string divisor_list, circle_list;
        for (const auto& r : classify_product_coassociatives(s)) {
            switch (r.type) {
                case ProductType::divisor:
                    ++divisors;
                    if (!divisor_list.empty()) divisor_list += ' ';
                    divisor_list += repdetail::axes_digits(r.tangent);
                    if (!ComplexPairing::invariant(r.tangent)) typed = false;
                    break;
                case ProductType::lagrangian_circle:
                    ++circles;
                    if (!circle_list.empty()) circle_list += ' ';
                    circle_list += repdetail::axes_digits(r.tangent);
                    break;
                case ProductType::none:
                    ++none;
                    break;
            }
        }
        Check c;
        c.name = "toy/coassociative-census";
        c.anchor = "product-coassociatives-are-divisors-or-circle-families";
        c.values["divisors"] = divisor_list;
        c.values["lagrangian_circles"] = circle_list;
        c.values["unclassified"] = std::to_string(none);
        c.status = divisors == 3 && circles == 4 && none == 28 && typed ? CheckStatus::pass
                                                                        : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    DivisorSpec spec;
    spec.tangent_axes = axes_mask({2, 3, 4, 5});
    spec.normal_offsets = {0.3, 0.62};
    spec.theta_offset = 0.44;
    PushforwardResult res = divisor_solve(spec, cfg.sigma, cfg.truncation);

    Check type = residual_check("toy/divisor-type", "divisor-laplacian-is-pure-one-one-type",
                                "pq_type", res.residuals.pq_type, 1e-8);
    type.values["tangent"] = repdetail::axes_list(spec.tangent_axes);
    out.report.add(std::move(type));
    out.report.add(residual_check("toy/divisor-closure", "pushforward-potential-is-closed",
                                  "closure", res.residuals.closure_of_f0, 1e-10));
    out.report.add(residual_check("toy/divisor-poisson", "pushforward-solves-the-base-poisson-equation",
                                  "poisson", res.residuals.poisson, 1e-10));
    Check avg = residual_check("toy/higgs-average", "base-codifferential-rotates-the-higgs-average",
                               "dstar_gap", res.dstar_gap, 1e-10);
    avg.values["theta_dependence"] = fmt(res.g_theta_dependence);
    out.report.add(std::move(avg));

    {
        DivisorSpec ctrl;
        ctrl.tangent_axes = axes_mask({2, 4, 5, 7});
        ctrl.normal_offsets = {0.3, 0.62};
        ctrl.theta_offset = 0.44;
        ctrl.diagnostic = true;
        PushforwardResult cres = divisor_solve(ctrl, cfg.sigma, cfg.truncation);
        Check c;
        c.name = "toy/control";
        c.anchor = "non-invariant-tangent-breaks-pure-type";
        c.residuals["pq_type"] = cres.residuals.pq_type;
        c.values["tangent"] = repdetail::axes_list(ctrl.tangent_axes);
        c.values["dstar_gap"] = fmt(cres.dstar_gap);
        c.values["threshold"] = fmt(0.1);
        c.status = cres.residuals.pq_type >= 0.1 ? CheckStatus::pass : CheckStatus::fail;
        out.report.add(std::move(c));
    }

    GridSpec grid;
    grid.points[5] = 16;
    grid.points[6] = 16;
    out.fields.push_back({"toy_f0", res.f0, grid});
    out.fields.push_back({"toy_higgs_avg", res.phi, grid});
    return out;
}

// -------------------------------------------------------------------- all

inline RunOutput run_all(const RunConfig& cfg, const std::vector<FourManifold>& manifolds = {},
                         const std::vector<std::vector<int>>* facets = nullptr) {
    RunOutput out = run_identities(cfg);
    merge(out, run_calibrate(cfg));
    merge(out, run_gerbe(cfg));
    merge(out, run_chern_weil(cfg, manifolds));
    merge(out, run_cech(cfg, facets));
    merge(out, run_toy(cfg));
    return out;
}

// ---------------------------------------------------------- serialization

inline nlohmann::ordered_json report_json(const Report& r, const std::string& timestamp) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["generated"] = timestamp;
    nlohmann::ordered_json cfg;
    cfg["convention"] = to_string(r.config.convention);
    cfg["truncation"] = r.config.truncation;
    cfg["sigma"] = r.config.sigma;
    cfg["radius"] = r.config.radius;
    cfg["quad_order"] = r.config.quad_order;
    cfg["seed"] = r.config.seed;
    j["config"] = std::move(cfg);

    std::vector<const Check*> order;
    order.reserve(r.checks.size());
    for (const Check& c : r.checks) order.push_back(&c);
    std::sort(order.begin(), order.end(),
              [](const Check* a, const Check* b) { return a->name < b->name; });

    auto checks = nlohmann::ordered_json::array();
    for (const Check* c : order) {
        nlohmann::ordered_json e;
        e["name"] = c->name;
        e["status"] = to_string(c->status);
        e["anchor"] = c->anchor;
        e["residuals"] = c->residuals;
        e["values"] = c->values;
        if (!c->note.empty()) e["note"] = c->note;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

inline std::string render_report(const Report& r, const std::string& timestamp) {
    return report_json(r, timestamp).dump(2) + "\n";
}

inline std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string render_csv(const FourierForm& f, const GridSpec& grid) {
    std::string out = "x1,x2,x3,x4,x5,x6,x7,blade,real,imag\n";
    for (const SampleRow& row : sample(f, grid)) {
        std::string line;
        for (double x : row.x) {
            line += repdetail::fmt(x);
            line += ',';
        }
        line += blade_name(row.blade);
        line += ',';
        line += repdetail::fmt(row.value.real());
        line += ',';
        line += repdetail::fmt(row.value.imag());
        line += '\n';
        out += line;
    }
    return out;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

/// Write report.json, fields/*.csv, and a manifest.txt listing every
/// artifact with its FNV-1a content hash, sorted by path.
inline void write_artifacts(const std::filesystem::path& root, const RunOutput& out,
                            const std::string& timestamp) {
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("report.json", render_report(out.report, timestamp));
    for (const FieldDump& dump : out.fields)
        files.emplace_back("fields/" + dump.name + ".csv", render_csv(dump.field, dump.grid));
    std::sort(files.begin(), files.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::string manifest;
    for (const auto& [rel, bytes] : files) {
        std::filesystem::path target = root / rel;
        std::filesystem::create_directories(target.parent_path());
        std::ofstream stream(target, std::ios::binary);
        if (!stream) throw std::runtime_error("cannot write " + target.string());
        stream.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        char hash[32];
        std::snprintf(hash, sizeof hash, "fnv1a64:%016llx",
                      static_cast<unsigned long long>(fnv1a64(bytes)));
        manifest += hash;
        manifest += "  ";
        manifest += rel;
        manifest += '\n';
    }
    std::ofstream stream(root / "manifest.txt", std::ios::binary);
    if (!stream) throw std::runtime_error("cannot write manifest.txt");
    stream.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
}

// ---------------------------------------------------------------- loaders

/// Manifolds file: [{"name": ..., "betti": [b0..b4], "intersection": [[..]]}]
inline std::vector<FourManifold> load_manifolds(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.is_array()) throw std::invalid_argument("manifolds file: expected a JSON array");
    std::vector<FourManifold> out;
    for (const auto& entry : j) {
        FourManifold m;
        m.name = entry.at("name").get<std::string>();
        auto betti = entry.at("betti");
        if (!betti.is_array() || betti.size() != 5)
            throw std::invalid_argument(m.name + ": betti must have five entries");
        for (std::size_t i = 0; i < 5; ++i) m.betti[i] = betti[i].get<long long>();
        for (const auto& row : entry.at("intersection"))
            m.intersection.push_back(row.get<std::vector<long long>>());
        m.validate();
        out.push_back(std::move(m));
    }
    return out;
}

/// Complex file: {"facets": [[vertices], ...]} or a bare array of facets.
inline std::vector<std::vector<int>> load_complex(std::istream& in) {
    nlohmann::json j = nlohmann::json::parse(in);
    const nlohmann::json& facets = j.is_object() ? j.at("facets") : j;
    if (!facets.is_array()) throw std::invalid_argument("complex file: expected facet lists");
    std::vector<std::vector<int>> out;
    for (const auto& f : facets) out.push_back(f.get<std::vector<int>>());
    return out;
}

} // namespace g2forge
