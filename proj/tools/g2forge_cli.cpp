// Command line front end: one subcommand per verification pipeline, JSON
// report plus CSV field dumps and a hashed manifest when an output directory
// is given, JSON on stdout otherwise.
//
// Exit codes: 0 all pass, 1 any fail, 2 obstructed, 3 bad input.

#include <g2forge/report.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace g2forge;

namespace {

Mask parse_axes(const std::string& text) {
    Mask m = 0;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("bad axis list: " + text);
        Mask bit = axis_mask(v);
        if (m & bit) throw std::invalid_argument("repeated axis in " + text);
        m |= bit;
    }
    if (m == 0) throw std::invalid_argument("empty axis list");
    return m;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = std::stod(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw std::invalid_argument("bad offset list: " + text);
        out.push_back(v);
    }
    return out;
}

std::vector<FourManifold> manifolds_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return load_manifolds(in);
}

std::vector<std::vector<int>> complex_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return load_complex(in);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit: exact G2 exterior algebra, spectral gerbe "
                 "connections on the flat 7-torus, curvature pairings, and integer "
                 "degree-3 classes"};
    app.require_subcommand(1);

    std::string convention = "default";
    RunConfig defaults;
    int truncation = defaults.truncation;
    double sigma = defaults.sigma;
    double radius = defaults.radius;
    int quad_order = defaults.quad_order;
    unsigned int seed = defaults.seed;
    std::string out_dir;

    app.add_option("--convention", convention, "orientation convention: default or alt")
        ->check(CLI::IsMember({"default", "alt"}));
    app.add_option("-K,--truncation", truncation, "Fourier truncation bound (sup norm)");
    app.add_option("--sigma", sigma, "mollifier width");
    app.add_option("--radius", radius, "linking sphere radius");
    app.add_option("--quad-order", quad_order, "quadrature order per angle");
    app.add_option("--seed", seed, "seed for the randomized checks");
    app.add_option("--out", out_dir,
                   "directory for report.json, fields/*.csv, manifest.txt "
                   "(overridden by G2FORGE_OUT)");

    std::string phi_text, axes_text, offsets_text, manifolds_path, complex_path;

    CLI::App* identities = app.add_subcommand("identities", "exact identity battery");
    identities->add_option("--phi", phi_text,
                           "override the calibration 3-form, e.g. \"e123 + e145 - e167\"");
    CLI::App* calibrate = app.add_subcommand("calibrate", "classify coordinate subspaces");
    calibrate->add_option("--axes", axes_text, "comma-separated axes, e.g. 4,5,6,7");
    CLI::App* gerbe =
        app.add_subcommand("gerbe", "spectral gerbe connection around a coassociative torus");
    gerbe->add_option("--axes", axes_text, "three normal axes, e.g. 1,2,3");
    gerbe->add_option("--offsets", offsets_text, "normal offsets in [0,1), e.g. 0.5,0.5,0.5");
    CLI::App* chern =
        app.add_subcommand("chern-weil", "curvature adjunction and the pairing catalog");
    chern->add_option("--manifolds", manifolds_path, "extra four-manifolds (JSON file)");
    CLI::App* cech = app.add_subcommand("cech", "integer classes and dual subtori");
    cech->add_option("--complex", complex_path, "simplicial complex facets (JSON file)");
    CLI::App* toy = app.add_subcommand("toy", "circle-times-torus divisor pipeline");
    CLI::App* all = app.add_subcommand("all", "run every pipeline");
    all->add_option("--manifolds", manifolds_path, "extra four-manifolds (JSON file)");
    all->add_option("--complex", complex_path, "simplicial complex facets (JSON file)");
    for (CLI::App* sub : {identities, calibrate, gerbe, chern, cech, toy, all})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        RunConfig cfg;
        cfg.convention = convention_from(convention);
        cfg.truncation = truncation;
        cfg.sigma = sigma;
        cfg.radius = radius;
        cfg.quad_order = quad_order;
        cfg.seed = seed;
        if (const char* env = std::getenv("G2FORGE_OUT"); env && *env) out_dir = env;
        cfg.out_dir = out_dir;
        cfg.validate();

        RunOutput out;
        if (identities->parsed()) {
            if (phi_text.empty()) {
                out = run_identities(cfg);
            } else {
                Form phi = parse_form(phi_text);
                out = run_identities(cfg, &phi);
            }
        } else if (calibrate->parsed()) {
            std::vector<Mask> subsets;
            if (!axes_text.empty()) subsets.push_back(parse_axes(axes_text));
            out = run_calibrate(cfg, subsets);
        } else if (gerbe->parsed()) {
            GerbeOptions opt;
            if (!axes_text.empty()) opt.normal_axes = parse_axes(axes_text);
            if (!offsets_text.empty()) {
                std::vector<double> offs = parse_double_list(offsets_text);
                if (offs.size() != 3)
                    throw std::invalid_argument("gerbe: need exactly three offsets");
                std::copy(offs.begin(), offs.end(), opt.offsets.begin());
            }
            out = run_gerbe(cfg, opt);
        } else if (chern->parsed()) {
            std::vector<FourManifold> extra;
            if (!manifolds_path.empty()) extra = manifolds_from_file(manifolds_path);
            out = run_chern_weil(cfg, extra);
        } else if (cech->parsed()) {
            if (complex_path.empty()) {
                out = run_cech(cfg);
            } else {
                auto facets = complex_from_file(complex_path);
                out = run_cech(cfg, &facets);
            }
        } else if (toy->parsed()) {
            out = run_toy(cfg);
        } else {
            std::vector<FourManifold> extra;
            if (!manifolds_path.empty()) extra = manifolds_from_file(manifolds_path);
            if (complex_path.empty()) {
                out = run_all(cfg, extra);
            } else {
                auto facets = complex_from_file(complex_path);
                out = run_all(cfg, extra, &facets);
            }
        }

        out.report.sort();
        std::string timestamp = iso_timestamp();
        if (out_dir.empty()) {
            std::cout << render_report(out.report, timestamp);
        } else {
            write_artifacts(out_dir, out, timestamp);
            for (const Check& c : out.report.checks)
                std::cout << to_string(c.status) << "  " << c.name << '\n';
            std::cout << "wrote " << (std::filesystem::path(out_dir) / "report.json").string()
                      << '\n';
        }
        return exit_code(out.report);
    } catch (const ObstructionError& e) {
        std::cerr << "obstructed: " << e.what() << '\n';
        return 2;
    } catch (const FormParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
