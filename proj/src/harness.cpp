// SPDX-License-Identifier: Apache-2.0
//
// losnet - line-of-sight network capacity scaling laboratory
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0

#include "losnet/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include "losnet/dof.hpp"
#include "losnet/geometry.hpp"
#include "losnet/io_util.hpp"
#include "losnet/kernels.hpp"
#include "losnet/mimo.hpp"
#include "losnet/oscillatory.hpp"
#include "losnet/parallel.hpp"
#include "losnet/rng.hpp"
#include "losnet/scheme.hpp"

namespace losnet {

namespace {

// Typed access over the spec's flat parameter map; unknown keys are errors.
class Params {
  public:
    Params(const std::map<std::string, std::string>& kv,
           std::initializer_list<const char*> allowed)
        : kv_(kv) {
        std::set<std::string> ok(allowed.begin(), allowed.end());
        for (const auto& [key, value] : kv) {
            (void)value;
            if (!ok.count(key))
                throw InvalidParameter("unknown parameter for this experiment: " +
                                       key);
        }
    }

    double number(const std::string& key, double fallback) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : std::stod(it->second);
    }
    std::string text(const std::string& key, const std::string& fallback) const {
        auto it = kv_.find(key);
        return it == kv_.end() ? fallback : it->second;
    }
    std::vector<double> list(const std::string& key) const {
        auto it = kv_.find(key);
        if (it == kv_.end())
            throw InvalidParameter("missing required parameter: " + key);
        auto v = parse_double_list(it->second);
        if (v.empty())
            throw InvalidParameter("parameter list is empty: " + key);
        return v;
    }
    std::vector<double> list(const std::string& key,
                             const std::string& fallback) const {
        auto it = kv_.find(key);
        return parse_double_list(it == kv_.end() ? fallback : it->second);
    }

  private:
    const std::map<std::string, std::string>& kv_;
};

struct RunContext {
    const ExperimentSpec& spec;
    FittedConstants constants;
    int constants_version = 0;
    std::vector<std::string> files;

    std::string suffix() const {
        return std::to_string(spec.seed) + "," +
               std::to_string(constants_version) + "," + spec.id;
    }
    std::filesystem::path out(const std::string& name) {
        files.push_back(name);
        return spec.out_dir / name;
    }
};

void run_regime_map(RunContext& ctx) {
    Params p(ctx.spec.params, {"n_list", "a0_pow_list", "b_num", "b_den"});
    const auto n_list = p.list("n_list");
    const auto pow_list = p.list("a0_pow_list");
    const Rational b = Rational::of(
        static_cast<long long>(p.number("b_num", 0)),
        static_cast<long long>(p.number("b_den", 1)));

    CsvWriter csv(ctx.out("regime_map.csv"));
    csv.header(
        "n,a0,b,regime,sqrt_n,sqrt_a0,r3_split_exponent,r3_split_value,"
        "seed,constants_version,experiment");
    for (double n : n_list)
        for (double pw : pow_list) {
            const double a0 = std::pow(n, pw);
            const auto label = classify_regime(n, a0, b);
            csv.raw_row(fmt_double(n) + "," + fmt_double(a0) + "," + b.str() +
                        "," + regime_name(label.regime) + "," +
                        fmt_double(label.sqrt_n) + "," +
                        fmt_double(label.sqrt_a0) + "," +
                        label.r3_split_exponent.str() + "," +
                        fmt_double(label.r3_split_value) + "," + ctx.suffix());
        }
    csv.close();
}

void run_s_estimate(RunContext& ctx) {
    Params p(ctx.spec.params, {"ac_list", "ratio_list", "samples", "rho_mode",
                               "variant", "method", "tol"});
    const auto ac_list = p.list("ac_list");
    const auto ratio_list = p.list("ratio_list");
    const auto samples = static_cast<std::uint64_t>(p.number("samples", 1e6));
    const std::string rho_mode = p.text("rho_mode", "dimless");
    const std::string variant = p.text("variant", "exact");
    const std::string method = p.text("method", "mc");

    SMonteCarloOptions opt;
    opt.samples = samples;
    if (rho_mode == "paper")
        opt.rho_mode = kernels::RhoMode::PaperForm;
    else if (rho_mode != "dimless")
        throw InvalidParameter("rho_mode must be 'dimless' or 'paper'");
    if (variant == "phase-only")
        opt.phase_only = true;
    else if (variant == "iid-surrogate")
        opt.iid_surrogate = true;
    else if (variant == "collinear")
        opt.collinear = true;
    else if (variant != "exact")
        throw InvalidParameter("unknown s-estimate variant: " + variant);
    S0Options s0;
    s0.tol = p.number("tol", 1e-6);
    if (method != "mc" && method != "s0")
        throw InvalidParameter("method must be 'mc' or 's0'");

    struct Point {
        double a_c, d;
        SEstimate est;
    };
    std::vector<Point> grid;
    for (double ac : ac_list)
        for (double ratio : ratio_list) grid.push_back({ac, ac / ratio, {}});

    Rng root(ctx.spec.seed);
    parallel_for(0, grid.size(), ctx.spec.workers, [&](std::size_t i) {
        grid[i].est =
            method == "mc"
                ? estimate_s_monte_carlo(grid[i].a_c, grid[i].d, opt,
                                         root.substream("grid").substream(i))
                : estimate_s0(grid[i].a_c, grid[i].d, s0);
    });

    CsvWriter csv(ctx.out("s_sweep.csv"));
    csv.header(
        "a_c,d,method,samples,s_value,std_error,bound_k1,"
        "seed,constants_version,experiment");
    for (const auto& pt : grid) {
        const double bound =
            pt.d < pt.a_c ? s_bound(pt.a_c, pt.d, 1.0) : 0.0;
        const char* label = pt.est.method == SMethod::MonteCarlo ? "monte-carlo"
                            : pt.est.method == SMethod::Quadrature
                                ? "quadrature"
                                : "s0-approx";
        csv.raw_row(fmt_double(pt.a_c) + "," + fmt_double(pt.d) + "," + label +
                    "," + std::to_string(pt.est.samples) + "," +
                    fmt_double(pt.est.value) + "," +
                    fmt_double(pt.est.std_error) + "," + fmt_double(bound) +
                    "," + ctx.suffix());
    }
    csv.close();
}

void run_dof_scan(RunContext& ctx) {
    Params p(ctx.spec.params, {"m_list", "density", "ratio", "d_rule",
                               "snr_mimo_db", "placements", "threshold",
                               "dump_spectra"});
    const auto m_list = p.list("m_list");
    const double density = p.number("density", 1.0 / 16.0);
    const std::string d_rule = p.text("d_rule", "ratio");
    const double ratio = p.number("ratio", 16.0);
    const double snr_db = p.number("snr_mimo_db", 10.0);
    const int placements = static_cast<int>(p.number("placements", 10));
    const double threshold = p.number("threshold", 0.5);
    const bool dump_spectra = p.number("dump_spectra", 0) != 0;

    const double rho = linear_from_db(snr_db);
    Rng root(ctx.spec.seed);

    CsvWriter csv(ctx.out("dof_scan.csv"));
    csv.header(
        "m,a_c,d,capacity_bits,eff_dof,pz_bound,seed,constants_version,"
        "experiment");
    for (std::size_t mi = 0; mi < m_list.size(); ++mi) {
        const std::size_t m = static_cast<std::size_t>(m_list[mi]);
        const double a_c = static_cast<double>(m) / density;
        const double d =
            d_rule == "sqrt_ac" ? std::sqrt(a_c) : a_c / ratio;
        double cap = 0.0, dof = 0.0, pz = 0.0;
        for (int rep = 0; rep < placements; ++rep) {
            auto [tx, rx] = make_cluster_pair(
                a_c, d, m, root.substream("pair").substream(mi).substream(rep));
            const auto f = normalized_los_matrix(tx, rx, d);
            const auto spec = eigen_spectrum(f);
            cap += capacity_logdet(f, rho);
            dof += effective_dof(spec, rho, threshold);
            pz += paley_zygmund_bound(spec, m, rho).grid_max;
            if (dump_spectra && rep == 0) {
                CsvWriter sp(ctx.out("spectrum_m" + std::to_string(m) + ".csv"));
                sp.header("index,eigenvalue,seed,constants_version,experiment");
                for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i)
                    sp.raw_row(std::to_string(i) + "," +
                               fmt_double(spec.eigenvalues[i]) + "," +
                               ctx.suffix());
                sp.close();
            }
        }
        const double inv = 1.0 / placements;
        csv.raw_row(std::to_string(m) + "," + fmt_double(a_c) + "," +
                    fmt_double(d) + "," + fmt_double(cap * inv) + "," +
                    fmt_double(dof * inv) + "," + fmt_double(pz * inv) + "," +
                    ctx.suffix());
    }
    csv.close();
}

void run_lemma_verify(RunContext& ctx) {
    Params p(ctx.spec.params, {"per_family", "tol", "max_freq"});
    const int per_family = static_cast<int>(p.number("per_family", 60));
    const double tol = p.number("tol", 1e-8);
    const double max_freq = p.number("max_freq", 60.0);

    Rng root = Rng(ctx.spec.seed).substream("lemma-verify");
    CsvWriter csv(ctx.out("lemma_sweep.csv"));
    csv.header(
        "family,mode,params,c1,c2,integral_mag,bound,pass,"
        "seed,constants_version,experiment");

    auto emit = [&](const char* family_name, const PhaseIntegrand& integrand) {
        const auto hyp = check_hypotheses(integrand);
        if (!hyp.ok)
            throw PrecisionError("generated integrand failed hypotheses: " +
                                 hyp.reason);
        const double mag = std::abs(eval_phase_integral(integrand, tol));
        const double bound =
            lemma_bound(integrand.mode, integrand.c1, integrand.c2);
        std::ostringstream ps;
        for (int i = 0; i < 6; ++i)
            ps << (i ? ";" : "") << integrand.params[i];
        ps << ";z0=" << integrand.z0;
        csv.raw_row(std::string(family_name) + "," +
                    (integrand.mode == LemmaMode::Mu ? "mu" : "sqrt_mu") + "," +
                    ps.str() + "," + fmt_double(integrand.c1) + "," +
                    fmt_double(integrand.c2) + "," + fmt_double(mag) + "," +
                    fmt_double(bound) + "," + (mag <= bound ? "1" : "0") + "," +
                    ctx.suffix());
    };

    struct FamilySpec {
        PhaseIntegrand::Family family;
        const char* name;
    };
    const FamilySpec families[] = {
        {PhaseIntegrand::Family::LinearQuadratic, "linear-quadratic"},
        {PhaseIntegrand::Family::LinearCubic, "linear-cubic"},
        {PhaseIntegrand::Family::QuadraticAroundZ0, "quadratic-z0"}};
    for (const auto& fam : families) {
        Rng rng = root.substream(fam.name);
        for (const auto& q :
             sample_lemma_integrands(fam.family, per_family, max_freq, rng))
            emit(fam.name, q);
    }
    csv.close();
}

void run_scheme_sim(RunContext& ctx) {
    Params p(ctx.spec.params,
             {"mode", "n_list", "a0_pow", "a0_mult", "h", "rate_model", "q",
              "k3", "k4", "snr_l_db", "reuse9"});
    const std::string mode = p.text("mode", "hier");
    const auto n_list = p.list("n_list");
    const double a0_pow = p.number("a0_pow", 3.0);
    const double a0_mult = p.number("a0_mult", 1.0);
    const int h = static_cast<int>(p.number("h", 1));
    const std::string rate_model_s = p.text("rate_model", "closed-form");
    SchemeConstants constants;
    constants.q = static_cast<int>(p.number("q", 2));
    constants.k3 = p.number("k3", 1.0);
    constants.k4 = p.number("k4", 1.0);
    constants.reuse9 = p.number("reuse9", 0) != 0;
    const double snr_l_db = p.number("snr_l_db", 10.0);
    const RateModel rate_model = rate_model_s == "measured-mimo"
                                     ? RateModel::MeasuredMimo
                                     : RateModel::ClosedForm;

    struct Row {
        double n, a0;
        ThroughputReport rep;
        std::string plan_text;
    };
    std::vector<Row> rows(n_list.size());
    Rng root(ctx.spec.seed);
    parallel_for(0, n_list.size(), ctx.spec.workers, [&](std::size_t i) {
        const double n = n_list[i];
        const double a0 = a0_mult * std::pow(n, a0_pow);
        auto cfg = NetworkConfig::make_with_snr(
            static_cast<std::size_t>(n), a0, snr_l_db, constants.q,
            ctx.spec.seed + i);
        auto placement = place_nodes(cfg, cfg.domain());
        Rng rng = root.substream("scheme").substream(i);
        Row row;
        row.n = n;
        row.a0 = a0;
        if (mode == "tdma") {
            row.rep = tdma_baseline(cfg, placement, rng);
            row.plan_text = "tdma n=" + fmt_double(n) + "\n";
        } else {
            auto plan = plan_hierarchy(n, a0, h, constants);
            row.rep =
                simulate_throughput(plan, placement, rate_model, cfg,
                                    constants, rng);
            row.plan_text = plan_to_text(plan);
        }
        rows[i] = std::move(row);
    });

    std::vector<double> ns, ts;
    for (const auto& row : rows) {
        ns.push_back(row.n);
        ts.push_back(row.rep.throughput);
    }
    const double slope = ns.size() >= 2 ? fit_loglog_slope(ns, ts) : 0.0;

    CsvWriter csv(ctx.out("scheme_sweep.csv"));
    csv.header(
        "n,a0,h,regime,M,M_prime,T_sim,T_closed_form,exponent_fit,"
        "seed,constants_version,experiment");
    for (const auto& row : rows) {
        csv.raw_row(fmt_double(row.n) + "," + fmt_double(row.a0) + "," +
                    std::to_string(mode == "tdma" ? 0 : h) + "," +
                    regime_name(row.rep.regime) + "," +
                    std::to_string(row.rep.m) + "," +
                    std::to_string(row.rep.m_prime) + "," +
                    fmt_double(row.rep.throughput) + "," +
                    fmt_double(row.rep.closed_form) + "," + fmt_double(slope) +
                    "," + ctx.suffix());
    }
    csv.close();

    for (const auto& row : rows) {
        const std::string name =
            "plan_n" + std::to_string(static_cast<long long>(row.n)) + ".txt";
        std::FILE* f = std::fopen((ctx.spec.out_dir / name).string().c_str(), "wb");
        if (!f) throw InvalidParameter("cannot write plan file " + name);
        std::fputs(row.plan_text.c_str(), f);
        std::fclose(f);
        ctx.files.push_back(name);
    }
}

void run_concentration(RunContext& ctx) {
    Params p(ctx.spec.params, {"m_list", "a_c", "d", "trials", "snr_mimo_db"});
    const auto m_list = p.list("m_list");
    ConcentrationParams cp;
    cp.a_c = p.number("a_c", 1e4);
    cp.d = p.number("d", 200.0);
    cp.trials = static_cast<std::size_t>(p.number("trials", 1000));
    cp.snr_mimo_db = p.number("snr_mimo_db", 10.0);
    cp.workers = ctx.spec.workers;

    Rng root(ctx.spec.seed);
    CsvWriter summary(ctx.out("concentration_summary.csv"));
    summary.header(
        "m,s,mean_capacity,tail_at_s06,seed,constants_version,experiment");
    for (double m : m_list) {
        cp.m = static_cast<std::size_t>(m);
        const auto rep =
            concentration_check(cp, root.substream("m").substream(
                                        static_cast<std::uint64_t>(m)));
        CsvWriter csv(ctx.out("concentration_m" +
                              std::to_string(cp.m) + ".csv"));
        csv.header("t,empirical_tail,lemma_bound,seed,constants_version,experiment");
        for (std::size_t i = 0; i < rep.t_grid.size(); ++i)
            csv.raw_row(fmt_double(rep.t_grid[i]) + "," +
                        fmt_double(rep.empirical_tail[i]) + "," +
                        fmt_double(rep.lemma_bound[i]) + "," + ctx.suffix());
        csv.close();
        summary.raw_row(std::to_string(cp.m) + "," + fmt_double(rep.scale_s) +
                        "," + fmt_double(rep.mean_capacity) + "," +
                        fmt_double(rep.tail_at(std::pow(rep.scale_s, 0.6))) +
                        "," + ctx.suffix());
    }
    summary.close();
}

}  // namespace

const std::vector<std::string>& known_experiments() {
    static const std::vector<std::string> ids = {
        "dof-scan",   "s-estimate",    "lemma-verify",
        "scheme-sim", "regime-map",    "concentration"};
    return ids;
}

ArtifactManifest run_experiment(const ExperimentSpec& spec) {
    const auto& ids = known_experiments();
    if (std::find(ids.begin(), ids.end(), spec.id) == ids.end())
        throw InvalidParameter("unknown experiment id: " + spec.id);
    std::filesystem::create_directories(spec.out_dir);

    RunContext ctx{spec, {}, 0, {}};
    if (!spec.constants_path.empty()) {
        ctx.constants = FittedConstants::load(spec.constants_path);
        ctx.constants_version = ctx.constants.version;
    }

    const auto t0 = std::chrono::steady_clock::now();
    if (spec.id == "regime-map")
        run_regime_map(ctx);
    else if (spec.id == "s-estimate")
        run_s_estimate(ctx);
    else if (spec.id == "dof-scan")
        run_dof_scan(ctx);
    else if (spec.id == "lemma-verify")
        run_lemma_verify(ctx);
    else if (spec.id == "scheme-sim")
        run_scheme_sim(ctx);
    else if (spec.id == "concentration")
        run_concentration(ctx);
    const auto t1 = std::chrono::steady_clock::now();

    ArtifactManifest manifest;
    manifest.wall_seconds =
        std::chrono::duration<double>(t1 - t0).count();
    std::sort(ctx.files.begin(), ctx.files.end());
    std::string combined;
    for (const auto& name : ctx.files) {
        const std::uint64_t h = hash_file(spec.out_dir / name);
        manifest.files.emplace_back(name, h);
        combined += name + ":" + std::to_string(h) + "\n";
    }
    manifest.combined_hash = fnv1a64(combined);

    manifest.manifest_path = spec.out_dir / "manifest.txt";
    std::FILE* f =
        std::fopen(manifest.manifest_path.string().c_str(), "wb");
    if (!f) throw InvalidParameter("cannot write manifest");
    std::fprintf(f, "experiment = %s\n", spec.id.c_str());
    std::fprintf(f, "seed = %llu\n",
                 static_cast<unsigned long long>(spec.seed));
    std::fprintf(f, "losnet_version = %s\n", kVersion);
    std::fprintf(f, "constants_version = %d\n", ctx.constants_version);
    std::fprintf(f, "kernel_backend = %s\n",
                 kernels::backend_name(kernels::active_backend()).c_str());
    std::fprintf(f, "workers = %d\n", spec.workers);
    for (const auto& [key, value] : spec.params)
        std::fprintf(f, "param.%s = %s\n", key.c_str(), value.c_str());
    std::fprintf(f, "wall_seconds = %.3f\n", manifest.wall_seconds);
    for (const auto& [name, h] : manifest.files)
        std::fprintf(f, "file %s fnv1a64 %llu\n", name.c_str(),
                     static_cast<unsigned long long>(h));
    std::fprintf(f, "combined_hash = %llu\n",
                 static_cast<unsigned long long>(manifest.combined_hash));
    std::fclose(f);
    return manifest;
}

}  // namespace losnet
