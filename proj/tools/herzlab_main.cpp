/**
 * @file herzlab_main.cpp
 * @brief Command-line front end: norms, dyadic decompositions, heat flow,
 *        the semilinear solver, and the verification suite.
 *
 * Subcommands: norm | decompose | heat | solve | verify.  Inputs come from
 * an optional JSON config file plus flag overrides; every run prints a JSON
 * document with the fully resolved configuration and the results.  Exit
 * codes: 0 success, 1 verification failures, 2 usage / input errors.
 */
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "herzlab/heat.h"
#include "herzlab/io.h"
#include "herzlab/util.h"
#include "herzlab/verify.h"

namespace {

using herzlab::cplx;
using herzlab::DyadicSystem;
using herzlab::GridSpec;
using herzlab::SampledField;
using nlohmann::json;

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw herzlab::InputError("cli: cannot open config '" + path + "'");
    try {
        json j;
        in >> j;
        if (!j.is_object())
            throw herzlab::InputError("cli: config root must be a JSON object");
        return j;
    } catch (const json::exception& e) {
        throw herzlab::InputError("cli: malformed config: " + std::string(e.what()));
    }
}

/// cfg[key] if present, else the fallback (which is recorded back into cfg so
/// the printed config is fully resolved).
template <typename T>
T resolved(json& cfg, const std::string& key, T fallback) {
    if (!cfg.contains(key)) {
        cfg[key] = fallback;
        return fallback;
    }
    try {
        return cfg[key].get<T>();
    } catch (const json::exception& e) {
        throw herzlab::InputError("cli: bad value for '" + key + "': " + e.what());
    }
}

GridSpec resolve_grid(json& cfg) {
    json& gc = cfg["grid"];
    if (!gc.is_object()) gc = json::object();
    GridSpec g;
    g.dim = resolved(gc, "dim", 1);
    g.halfwidth = resolved(gc, "halfwidth", 3.141592653589793);
    g.points_per_axis = resolved(gc, "points_per_axis", 256);
    g.validate();
    return g;
}

herzlab::TLParams resolve_norm_params(json& cfg, const GridSpec& g) {
    json& nc = cfg["norm"];
    if (!nc.is_object()) nc = json::object();
    const double p = resolved(nc, "p", 2.0);
    const double q = resolved(nc, "q", 2.0);
    const double alpha = resolved(nc, "alpha", 0.0);
    herzlab::TLParams tp;
    tp.herz = herzlab::HerzParams::for_grid(g, p, q, alpha);
    tp.herz.k_min = resolved(nc, "k_min", tp.herz.k_min);
    tp.herz.k_max = resolved(nc, "k_max", tp.herz.k_max);
    tp.s = resolved(nc, "s", 0.0);
    const std::string beta = resolved<std::string>(nc, "beta", "2");
    tp.beta = (beta == "inf") ? herzlab::kInf : std::stod(beta);
    tp.validate(g.dim);
    return tp;
}

SampledField resolve_field(json& cfg, const GridSpec& g, const DyadicSystem& sys,
                           std::uint64_t seed) {
    json& fc = cfg["field"];
    if (!fc.is_object()) fc = json::object();
    const std::string kind = resolved<std::string>(fc, "kind", "gaussian_bump");
    if (kind == "gaussian_bump") {
        const double center = resolved(fc, "center", 1.0);
        const double width = resolved(fc, "width", 0.5);
        const double amplitude = resolved(fc, "amplitude", 1.0);
        if (!(width > 0))
            throw herzlab::InputError("cli: bump width must be positive");
        std::vector<cplx> vals(g.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const auto x = g.point(i);
            double r2 = 0.0;
            for (int a = 0; a < g.dim; ++a) {
                const double d = x[a] - (a == 0 ? center : 0.0);
                r2 += d * d;
            }
            vals[i] = cplx(amplitude * std::exp(-r2 / (2.0 * width * width)), 0.0);
        }
        return SampledField::from_values(g, std::move(vals));
    }
    if (kind == "random_band")
        return herzlab::random_band_field(sys, resolved(fc, "s", 0.5), seed);
    if (kind == "power_cusp")
        return herzlab::power_cusp(g, resolved(fc, "kappa", 0.5),
                                   resolved(fc, "rho", 0.5 * g.halfwidth));
    if (kind == "constant") {
        const double value = resolved(fc, "value", 1.0);
        return SampledField::from_values(
            g, std::vector<cplx>(g.size(), cplx(value, 0.0)));
    }
    if (kind == "file") {
        const std::string path = resolved<std::string>(fc, "path", "");
        if (path.empty())
            throw herzlab::InputError("cli: field kind 'file' needs a path");
        SampledField f = herzlab::read_field(path);
        if (!(f.grid() == g))
            throw herzlab::InputError(
                "cli: field file grid differs from the configured grid");
        return f;
    }
    throw herzlab::InputError("cli: unknown field kind '" + kind + "'");
}

herzlab::LipFunction resolve_nonlinearity(json& sc) {
    json& nl = sc["nonlinearity"];
    if (!nl.is_object()) nl = json::object();
    const std::string name = resolved<std::string>(nl, "name", "power");
    const double mu = resolved(nl, "mu", 2.0);
    const double scale = resolved(nl, "scale", 1.0);
    return herzlab::LipFunction::by_name(name, mu, scale);
}

void emit(const std::string& command, const json& config, const json& result) {
    json out;
    out["command"] = command;
    out["config"] = config;
    out["result"] = result;
    std::cout << out.dump(2) << "\n";
}

int run_norm(json cfg, std::uint64_t seed, const std::string&) {
    const GridSpec g = resolve_grid(cfg);
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::TLParams tp = resolve_norm_params(cfg, g);
    const SampledField f = resolve_field(cfg, g, sys, seed);
    json res;
    res["herz_norm"] = herzlab::herz_norm(f, tp.herz);
    res["ktl_norm"] = herzlab::ktl_norm(f, tp, sys);
    json& nc = cfg["norm"];
    if (resolved(nc, "peetre", false)) {
        herzlab::PeetreParams pp;
        pp.a = resolved(nc, "peetre_a", 2.0);
        res["ktl_norm_peetre"] = herzlab::ktl_norm_peetre(f, tp, sys, pp);
        res["peetre_equivalence_ok"] =
            herzlab::peetre_equivalence_ok(pp, tp, g.dim);
    }
    res["levels"] = sys.levels();
    emit("norm", cfg, res);
    return 0;
}

int run_decompose(json cfg, std::uint64_t seed, const std::string& output) {
    const GridSpec g = resolve_grid(cfg);
    json& dc = cfg["decompose"];
    if (!dc.is_object()) dc = json::object();
    const int j_max = resolved(dc, "j_max", -1);
    const DyadicSystem sys = herzlab::build_dyadic_system(g, j_max);
    const SampledField f = resolve_field(cfg, g, sys, seed);

    json res;
    res["j_max"] = sys.j_max;
    double partition_dev = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        double acc = 0.0;
        for (int j = 0; j <= sys.j_max; ++j) acc += sys.multipliers[j][k];
        const double r = g.freq_radius(k);
        const double want = (r <= std::pow(2.0, sys.j_max)) ? 1.0 : acc;
        partition_dev = std::max(partition_dev, std::abs(acc - want));
    }
    res["partition_deviation"] = partition_dev;
    json blocks = json::array();
    SampledField sum;
    for (int j = 0; j <= sys.j_max; ++j) {
        const SampledField bj = herzlab::lp_block(f, sys, j);
        blocks.push_back(herzlab::field_lp_norm(bj, 2.0));
        sum = (j == 0) ? bj : herzlab::field_add(sum, bj);
    }
    res["block_l2_norms"] = blocks;
    res["reconstruction_rel_l2_error"] = herzlab::rel_l2_error(sum, f);
    herzlab::write_multiplier_csv(sys, output + "_multipliers.csv");
    res["multiplier_csv"] = output + "_multipliers.csv";
    emit("decompose", cfg, res);
    return 0;
}

int run_heat(json cfg, std::uint64_t seed, const std::string& output) {
    const GridSpec g = resolve_grid(cfg);
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    json& hc = cfg["heat"];
    if (!hc.is_object()) hc = json::object();
    const double t = resolved(hc, "t", 0.1);
    const SampledField f = resolve_field(cfg, g, sys, seed);
    const SampledField out = herzlab::heat_propagate(f, t);
    herzlab::write_field(out, output + "_heat");
    json res;
    res["t"] = t;
    res["input_l2"] = herzlab::field_lp_norm(f, 2.0);
    res["output_l2"] = herzlab::field_lp_norm(out, 2.0);
    res["output_sup"] = herzlab::field_lp_norm(out, herzlab::kInf);
    res["field_base"] = output + "_heat";
    emit("heat", cfg, res);
    return 0;
}

int run_solve(json cfg, std::uint64_t seed, const std::string& output) {
    const GridSpec g = resolve_grid(cfg);
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    json& sc = cfg["solve"];
    if (!sc.is_object()) sc = json::object();
    herzlab::MildSolverConfig mc;
    mc.T = resolved(sc, "T", 0.1);
    mc.steps = resolved(sc, "steps", 64);
    mc.picard_tol = resolved(sc, "picard_tol", 1e-8);
    mc.picard_max = resolved(sc, "picard_max", 200);
    mc.blowup_threshold = resolved(sc, "blowup_threshold", 1e6);
    mc.snapshot_stride = resolved(sc, "snapshot_stride", 8);
    mc.norm_params = resolve_norm_params(cfg, g);
    const herzlab::LipFunction G = resolve_nonlinearity(sc);
    const SampledField u0 = resolve_field(cfg, g, sys, seed);

    const herzlab::Trajectory tr = herzlab::solve_mild(u0, G, mc, sys);
    json res;
    switch (tr.status) {
        case herzlab::SolveStatus::completed: res["status"] = "completed"; break;
        case herzlab::SolveStatus::blown_up: res["status"] = "blown_up"; break;
        case herzlab::SolveStatus::picard_diverged:
            res["status"] = "picard_diverged";
            break;
    }
    res["iterations"] = tr.iterations;
    res["contraction_ratios"] = tr.contraction_ratios;
    if (tr.status != herzlab::SolveStatus::completed)
        res["failure_time"] = tr.failure_time;
    if (!tr.norm_trace.empty()) {
        res["final_norm"] = tr.norm_trace.back();
        herzlab::write_trajectory_csv(tr, output + "_trajectory.csv");
        res["trajectory_csv"] = output + "_trajectory.csv";
    }
    if (!tr.states.empty()) {
        herzlab::write_field(tr.states.back(), output + "_final");
        res["final_field_base"] = output + "_final";
    }
    emit("solve", cfg, res);
    return 0;
}

// --- verification suite ---------------------------------------------------

herzlab::CheckReport suite_heat_smoothing(std::uint64_t seed) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 3.141592653589793;
    g.points_per_axis = 2048;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::TLParams tp;
    tp.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.s = 0.5;
    tp.beta = 2.0;
    const SampledField f = herzlab::random_band_field(sys, tp.s, seed);
    std::vector<double> t_grid;
    for (int i = 0; i < 8; ++i)
        t_grid.push_back(1e-4 * std::pow(100.0, i / 7.0));
    return herzlab::check_heat_smoothing(f, tp, sys, {0.5, 1.0}, t_grid);
}

herzlab::CheckReport suite_herz_smoothing(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 8.0;
    // The borderline cusp needs several resolved annuli between the grid
    // spacing and the diffusion scale sqrt(t) before the decay rate settles;
    // this resolution and window measure the rate to within a few percent.
    g.points_per_axis = 16384;
    herzlab::HerzSmoothingSpec spec;
    spec.p = 4.0;
    spec.r = 2.0;
    spec.q = 2.0;
    spec.delta = 2.0;
    spec.alpha1 = 0.0;
    spec.alpha2 = 0.0;
    std::vector<double> t_grid;
    for (int i = 0; i < 8; ++i)
        t_grid.push_back(3e-3 * std::pow(100.0, i / 7.0));
    return herzlab::check_herz_smoothing(g, spec, t_grid);
}

herzlab::CheckReport suite_composition(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 2.0;
    g.points_per_axis = 512;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::TLParams tp;
    tp.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.s = 0.4;
    tp.beta = 2.0;
    const auto fam = herzlab::dilated_bump_family(g, 20, 1.3, 0.4, 0.9);
    return herzlab::check_composition(herzlab::LipFunction::power(2.0), fam, tp,
                                      sys);
}

herzlab::CheckReport suite_product(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 2.0;
    g.points_per_axis = 512;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::TLParams tp;
    tp.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.s = 0.45;
    tp.beta = 2.0;
    const auto fam = herzlab::dilated_bump_family(g, 20, 1.3, 0.4, 0.9);
    return herzlab::check_product(fam, 2, tp, sys);
}

herzlab::CheckReport suite_embedding(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 2.0;
    g.points_per_axis = 512;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::EmbeddingSpec emb;
    emb.source.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.5);
    emb.source.s = 0.8;
    emb.source.beta = herzlab::kInf;
    emb.target.herz = herzlab::HerzParams::for_grid(g, 4.0, 2.0, 0.0);
    emb.target.s = 0.05;
    emb.target.beta = 2.0;
    herzlab::InterpolationSpec interp;
    interp.end0.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    interp.end0.s = 0.3;
    interp.end0.beta = 2.0;
    interp.end1.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.5);
    interp.end1.s = 0.7;
    interp.end1.beta = 4.0;
    interp.thetas = {0.25, 0.5, 0.75};
    const auto fam = herzlab::modulated_bump_family(g, 20, 1.2, 0.5, 2.0, 1.35);
    return herzlab::check_embedding_interpolation(fam, emb, interp, sys);
}

herzlab::CheckReport suite_hardy(std::uint64_t seed) {
    return herzlab::check_hardy_sequences({8, 16, 32, 64}, {0.25, 0.5, 0.75},
                                          {0.5, 1.0, 2.0, herzlab::kInf}, 100,
                                          seed);
}

herzlab::CheckReport suite_blowup(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 3.141592653589793;
    g.points_per_axis = 32;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    const SampledField u0 = SampledField::from_values(
        g, std::vector<cplx>(g.size(), cplx(1.0, 0.0)));
    herzlab::MildSolverConfig cfg;
    cfg.T = 0.5;
    cfg.steps = 256;
    cfg.picard_max = 4000;
    cfg.blowup_threshold = 1e6;
    cfg.norm_params.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    cfg.norm_params.s = 0.4;
    cfg.norm_params.beta = 2.0;
    herzlab::ExistenceBoundInput eb;
    eb.mu = 2.0;
    eb.s = 0.4;
    eb.p = 2.0;
    eb.q = 2.0;
    eb.alpha = 0.0;
    eb.dim = 1;
    return herzlab::check_blowup_scaling(u0, {1.0, 2.0, 4.0, 8.0},
                                         herzlab::LipFunction::power(2.0), cfg,
                                         sys, eb, true);
}

herzlab::CheckReport suite_regularity(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 3.141592653589793;
    g.points_per_axis = 256;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    std::vector<cplx> vals(g.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const double x = g.point(i)[0];
        vals[i] = cplx(std::exp(-0.5 * (x - 1.0) * (x - 1.0) / 0.25), 0.0);
    }
    const SampledField u0 = SampledField::from_values(g, std::move(vals));
    herzlab::MildSolverConfig cfg;
    cfg.T = 0.05;
    cfg.steps = 64;
    cfg.snapshot_stride = 8;
    cfg.norm_params.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    cfg.norm_params.s = 0.4;
    cfg.norm_params.beta = 2.0;
    const double mu = 2.0;
    const double sbar = 1.0 / 2.0 + 0.0 - 2.0 / (mu - 1.0);
    const double theta = 0.5 * (cfg.norm_params.s - sbar) * (mu - 1.0);
    return herzlab::check_regularity_gain(u0, herzlab::LipFunction::power(mu),
                                          cfg, sys, theta, mu);
}

herzlab::CheckReport suite_optimality(std::uint64_t) {
    GridSpec g;
    g.dim = 1;
    g.halfwidth = 2.0;
    g.points_per_axis = 2048;
    const DyadicSystem sys = herzlab::build_dyadic_system(g);
    herzlab::TLParams tp;
    tp.herz = herzlab::HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.beta = 2.0;
    return herzlab::check_optimality_probe(0.5, {0.7, 0.85, 1.6, 2.0}, tp, sys);
}

int run_verify(json cfg, std::uint64_t seed, const std::string& output) {
    json& vc = cfg["verify"];
    if (!vc.is_object()) vc = json::object();
    const std::string suite = resolved<std::string>(vc, "suite", "all");

    using SuiteFn = herzlab::CheckReport (*)(std::uint64_t);
    const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"heat_smoothing", suite_heat_smoothing},
        {"herz_smoothing", suite_herz_smoothing},
        {"composition", suite_composition},
        {"product", suite_product},
        {"embedding_interpolation", suite_embedding},
        {"hardy_sequences", suite_hardy},
        {"blowup_scaling", suite_blowup},
        {"regularity_gain", suite_regularity},
        {"optimality_probe", suite_optimality},
    };
    std::vector<std::string> wanted;
    if (suite == "all") {
        for (const auto& [name, fn] : table) wanted.push_back(name);
    } else {
        std::stringstream ss(suite);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            bool known = false;
            for (const auto& [name, fn] : table) known = known || name == tok;
            if (!known)
                throw herzlab::InputError("cli: unknown check '" + tok + "'");
            wanted.push_back(tok);
        }
        if (wanted.empty())
            throw herzlab::InputError("cli: empty check selection");
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<herzlab::CheckReport> reports;
    for (const std::string& name : wanted) {
        for (const auto& [tname, fn] : table) {
            if (tname != name) continue;
            herzlab::CheckReport rep = fn(seed);
            std::cout << (rep.passed() ? "[pass] " : "[" + rep.verdict + "] ")
                      << rep.check_name << "\n";
            reports.push_back(std::move(rep));
        }
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    cfg["seed"] = seed;
    cfg["threads"] = herzlab::worker_threads();
    const std::string doc = herzlab::report_to_json(reports, cfg.dump(), total);
    {
        std::ofstream out(output + "_report.json");
        if (!out)
            throw herzlab::InputError("cli: cannot write '" + output +
                                      "_report.json'");
        out << doc << "\n";
    }
    std::cout << doc << "\n";
    for (const herzlab::CheckReport& r : reports)
        if (r.verdict == "fail") return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for weighted-annulus smoothness norms, the "
                 "heat semigroup, and the semilinear heat equation"};
    app.require_subcommand(1);
    app.fallthrough();  // let --config/--output/--seed follow the subcommand

    std::string config_path;
    std::string output = "herzlab";
    std::uint64_t seed = 1234;
    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--output", output, "output path prefix")
        ->capture_default_str();
    app.add_option("--seed", seed, "random seed")->capture_default_str();

    CLI::App* c_norm = app.add_subcommand("norm", "annulus-weighted norms of a field");
    CLI::App* c_dec =
        app.add_subcommand("decompose", "dyadic frequency decomposition");
    CLI::App* c_heat = app.add_subcommand("heat", "apply the heat semigroup");
    CLI::App* c_solve =
        app.add_subcommand("solve", "mild solver for u_t = Lu + G(u)");
    CLI::App* c_verify =
        app.add_subcommand("verify", "run the quantitative verification suite");
    std::string suite;
    c_verify->add_option("--suite", suite,
                         "comma-separated check names (default all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json cfg = load_config(config_path);
        if (cfg.contains("seed") && !app.count("--seed"))
            seed = cfg["seed"].get<std::uint64_t>();
        cfg["seed"] = seed;
        if (!suite.empty()) cfg["verify"]["suite"] = suite;
        if (c_norm->parsed()) return run_norm(std::move(cfg), seed, output);
        if (c_dec->parsed()) return run_decompose(std::move(cfg), seed, output);
        if (c_heat->parsed()) return run_heat(std::move(cfg), seed, output);
        if (c_solve->parsed()) return run_solve(std::move(cfg), seed, output);
        if (c_verify->parsed()) return run_verify(std::move(cfg), seed, output);
        return 2;
    } catch (const herzlab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
