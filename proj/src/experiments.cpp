#include "nsinf/experiments.hpp"

#include "nsinf/calculus.hpp"
#include "nsinf/errors.hpp"
#include "nsinf/manifest.hpp"
#include "nsinf/serialize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace nsinf {

using nlohmann::json;

// --- config ----------------------------------------------------------------

json to_json(const ExperimentConfig& cfg) {
    json fam{{"K", cfg.family.K},
             {"r", cfg.family.r},
             {"preset", cfg.family.preset == Preset::paper ? "paper" : "desk"},
             {"magnitudes", cfg.family.magnitudes}};
    json solver{{"N", cfg.solver.N},
                {"t_end", cfg.solver.t_end},
                {"dt_policy", cfg.solver.dt_policy == DtPolicy::cfl ? "cfl" : "fixed"},
                {"cfl", cfg.solver.cfl},
                {"dt_fixed", cfg.solver.dt_fixed},
                {"dt_max", cfg.solver.dt_max},
                {"snapshots_per_decade", cfg.solver.snapshots_per_decade},
                {"snap_t0_factor", cfg.solver.snap_t0_factor}};
    json norms{{"besov_points_per_decade", cfg.norms.besov_points_per_decade},
               {"besov_refine_tol", cfg.norms.besov_refine_tol},
               {"xt_points_per_decade", cfg.norms.xt_points_per_decade},
               {"oversample", cfg.norms.oversample}};
    return {{"family", fam},          {"Q", cfg.Q},
            {"nu", cfg.nu},           {"solver", solver},
            {"norms", norms},         {"run_solver", cfg.run_solver},
            {"sweep_Q", cfg.sweep_Q}, {"sweep_r", cfg.sweep_r},
            {"sweep_K", cfg.sweep_K}, {"sweep_budget", cfg.sweep_budget},
            {"out_dir", cfg.out_dir}, {"seed", cfg.seed}};
}

namespace {

template <typename T>
void maybe(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

ExperimentConfig experiment_config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("family")) {
        const json& f = j.at("family");
        maybe(f, "K", cfg.family.K);
        maybe(f, "r", cfg.family.r);
        if (f.contains("preset")) {
            const std::string p = f.at("preset").get<std::string>();
            if (p != "paper" && p != "desk") throw ConfigError("config: bad preset " + p);
            cfg.family.preset = p == "paper" ? Preset::paper : Preset::desk;
        }
        maybe(f, "magnitudes", cfg.family.magnitudes);
    }
    maybe(j, "Q", cfg.Q);
    maybe(j, "nu", cfg.nu);
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        maybe(s, "N", cfg.solver.N);
        maybe(s, "t_end", cfg.solver.t_end);
        if (s.contains("dt_policy")) {
            const std::string p = s.at("dt_policy").get<std::string>();
            if (p != "cfl" && p != "fixed") throw ConfigError("config: bad dt_policy " + p);
            cfg.solver.dt_policy = p == "cfl" ? DtPolicy::cfl : DtPolicy::fixed;
        }
        maybe(s, "cfl", cfg.solver.cfl);
        maybe(s, "dt_fixed", cfg.solver.dt_fixed);
        maybe(s, "dt_max", cfg.solver.dt_max);
        maybe(s, "snapshots_per_decade", cfg.solver.snapshots_per_decade);
        maybe(s, "snap_t0_factor", cfg.solver.snap_t0_factor);
    }
    if (j.contains("norms")) {
        const json& n = j.at("norms");
        maybe(n, "besov_points_per_decade", cfg.norms.besov_points_per_decade);
        maybe(n, "besov_refine_tol", cfg.norms.besov_refine_tol);
        maybe(n, "xt_points_per_decade", cfg.norms.xt_points_per_decade);
        maybe(n, "oversample", cfg.norms.oversample);
    }
    maybe(j, "run_solver", cfg.run_solver);
    maybe(j, "sweep_Q", cfg.sweep_Q);
    maybe(j, "sweep_r", cfg.sweep_r);
    maybe(j, "sweep_K", cfg.sweep_K);
    maybe(j, "sweep_budget", cfg.sweep_budget);
    maybe(j, "out_dir", cfg.out_dir);
    maybe(j, "seed", cfg.seed);
    return cfg;
}

FrequencyFamily build_family(const FamilyConfig& fc) {
    return build_frequency_family(fc.K, fc.r, fc.preset, fc.magnitudes);
}

// --- time ladder -------------------------------------------------------------

TimeLadder build_time_ladder(double Q, const FrequencyFamily& fam) {
    if (fam.r < 1) throw ConfigError("build_time_ladder: family has no shells");
    if (Q < 1.0) throw ConfigError("build_time_ladder: Q must be >= 1");

    TimeLadder ladder;
    const double beta_raw = std::round(Q * Q * Q);
    ladder.beta = int(std::min(beta_raw, double(fam.r)));
    ladder.beta = std::max(ladder.beta, 1);
    ladder.beta_capped = beta_raw > double(fam.r);

    int prev_r = fam.r + 1;
    for (int alpha = 1; alpha <= ladder.beta; ++alpha) {
        int r_alpha =
            int(std::lround(double(fam.r) - double(alpha) * double(fam.r) / ladder.beta));
        r_alpha = std::clamp(r_alpha, 0, fam.r);
        if (r_alpha >= prev_r) continue; // collapse duplicates
        prev_r = r_alpha;
        LadderEntry e;
        e.alpha = alpha;
        e.r_alpha = r_alpha;
        const double mag =
            r_alpha >= 1 ? double(fam.magnitude(r_alpha - 1)) : double(fam.K);
        e.T_alpha = 1.0 / (mag * mag);
        ladder.entries.push_back(e);
    }
    for (std::size_t i = 1; i < ladder.entries.size(); ++i)
        if (!(ladder.entries[i].T_alpha > ladder.entries[i - 1].T_alpha))
            throw NumericalError("build_time_ladder: ladder not strictly increasing");
    return ladder;
}

// --- shared norm pipeline ----------------------------------------------------

namespace {

std::vector<std::int64_t> ratio2_ladder(std::int64_t K, int r) {
    std::vector<std::int64_t> m(r);
    m[0] = 2 * K * K;
    for (int s = 1; s < r; ++s) m[s] = 2 * m[s - 1];
    return m;
}

struct ExactBundle {
    InitialData u0;
    FirstIterate fi;
    SplitU1 split;
};

ExactBundle make_exact(const FamilyConfig& fc, double Q) {
    ExactBundle b;
    b.u0 = build_initial_data(build_family(fc), Q);
    b.fi = first_iterate(b.u0);
    b.split = split_u1(b.fi.u1, b.u0.family);
    return b;
}

Trajectory exact_trajectory(const TrigField& f, double T, int ppd) {
    return Trajectory::from_field(f, log_schedule(T * 1e-5, T, std::max(16, ppd)));
}

CarlesonOptions carleson_opts(const NormSettings& ns) {
    CarlesonOptions o;
    o.points_per_decade = ns.xt_points_per_decade;
    o.oversample = ns.oversample;
    return o;
}

BesovOptions besov_opts(const NormSettings& ns) {
    BesovOptions o;
    o.points_per_decade = ns.besov_points_per_decade;
    o.refine_tol = ns.besov_refine_tol;
    o.oversample = ns.oversample;
    return o;
}

// plateau of ||u10(t)||_B over the window (1/|k1|^2, 1)
struct Plateau {
    double value = 0.0;
    double t = 0.0;
    double lo = 0.0, hi = 0.0;
};

Plateau u10_plateau(const TrigField& u10, const FrequencyFamily& fam,
                    const NormSettings& ns) {
    Plateau p;
    const double m1 = double(fam.magnitude(0));
    p.lo = 4.0 / (m1 * m1);
    p.hi = 0.25;
    const auto ts = log_schedule(p.lo, p.hi, 12);
    for (double t : ts) {
        const TrigField frozen = u10.at_time(t);
        if (frozen.empty()) continue;
        const double v = besov_norm(frozen, besov_opts(ns)).value;
        if (v > p.value) {
            p.value = v;
            p.t = t;
        }
    }
    return p;
}

double component_value(ScalingComponent component, const FamilyConfig& fc, double Q,
                       const NormSettings& ns, double T) {
    const auto xt_of = [&](const TrigField& f) {
        if (f.empty()) return 0.0;
        return xt_norm(exact_trajectory(f, T, ns.xt_points_per_decade), T,
                       carleson_opts(ns))
            .value;
    };
    switch (component) {
        case ScalingComponent::u0_besov: {
            const InitialData u0 = build_initial_data(build_family(fc), Q);
            return besov_norm(u0.field, besov_opts(ns)).value;
        }
        case ScalingComponent::u10_besov: {
            const ExactBundle b = make_exact(fc, Q);
            return u10_plateau(b.split.u10, b.u0.family, ns).value;
        }
        case ScalingComponent::u11_xt: {
            const ExactBundle b = make_exact(fc, Q);
            return xt_of(b.split.u11);
        }
        case ScalingComponent::n2_xt: {
            const ExactBundle b = make_exact(fc, Q);
            return xt_of(duhamel_integrate(leray_project(b.fi.n2)));
        }
        case ScalingComponent::n3_xt: {
            const ExactBundle b = make_exact(fc, Q);
            return xt_of(duhamel_integrate(leray_project(b.fi.n3)));
        }
    }
    throw ConfigError("component_value: unknown component");
}

} // namespace

ScalingFit measure_scaling(ScalingComponent component, ScalingAxis axis,
                           const std::vector<double>& grid, const ExperimentConfig& base) {
    if (grid.size() < 3) throw ConfigError("measure_scaling: need >= 3 grid points");
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (*hi < 4.0 * *lo)
        throw ConfigError("measure_scaling: grid must span a factor >= 4");

    const double T = base.solver.t_end;
    ScalingFit fit;
    for (double x : grid) {
        FamilyConfig fc = base.family;
        double Q = base.Q;
        if (axis == ScalingAxis::Q) {
            Q = x;
        } else {
            const int r = int(std::lround(x));
            if (r < 1 || std::abs(x - r) > 1e-9)
                throw ConfigError("measure_scaling: r grid must be positive integers");
            fc.r = r;
            fc.magnitudes = ratio2_ladder(fc.K, r);
        }
        const double v = component_value(component, fc, Q, base.norms, T);
        if (!(v > 0.0))
            throw ConfigError(
                "measure_scaling: component norm vanished (zero field injected?)");
        fit.xs.push_back(x);
        fit.ys.push_back(v);
    }

    const auto slope = [](const std::vector<double>& xs, const std::vector<double>& ys) {
        const std::size_t n = xs.size();
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += std::log(xs[i]);
            my += std::log(ys[i]);
        }
        mx /= double(n);
        my /= double(n);
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = std::log(xs[i]) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(ys[i]) - my);
        }
        return sxy / sxx;
    };
    fit.exponent = slope(fit.xs, fit.ys);

    // bootstrap CI over point resampling (seeded, deterministic)
    std::mt19937_64 rng(base.seed);
    std::uniform_int_distribution<std::size_t> pick(0, fit.xs.size() - 1);
    std::vector<double> es;
    es.reserve(1000);
    std::vector<double> bx, by;
    for (int rep = 0; rep < 1000; ++rep) {
        bx.clear();
        by.clear();
        for (std::size_t i = 0; i < fit.xs.size(); ++i) {
            const std::size_t j = pick(rng);
            bx.push_back(fit.xs[j]);
            by.push_back(fit.ys[j]);
        }
        // degenerate resamples (all points equal) carry no slope
        const auto [blo, bhi] = std::minmax_element(bx.begin(), bx.end());
        if (*blo == *bhi) continue;
        es.push_back(slope(bx, by));
    }
    std::sort(es.begin(), es.end());
    if (!es.empty()) {
        fit.ci_lo = es[std::size_t(0.025 * double(es.size() - 1))];
        fit.ci_hi = es[std::size_t(0.975 * double(es.size() - 1))];
    }
    return fit;
}

// --- the full experiment -------------------------------------------------------

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw NumericalError(std::string("stage '") + name + "' failed: " + e.what());
    }
}

LinfResult snapshot_linf(const std::variant<TrigField, GridField>& snap, int oversample) {
    if (const GridField* g = std::get_if<GridField>(&snap)) return linf_norm(*g, oversample);
    return linf_norm(std::get<TrigField>(snap), 0.0, oversample);
}

NormReport snapshot_besov(const std::variant<TrigField, GridField>& snap,
                          const BesovOptions& opt) {
    if (const GridField* g = std::get_if<GridField>(&snap)) return besov_norm(*g, opt);
    return besov_norm(std::get<TrigField>(snap), opt);
}

void write_artifacts(const InflationReport& rep, const ExperimentConfig& cfg,
                     const json& resolved) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    write_json_file(cfg.out_dir + "/manifest.json", resolved);
    write_json_file(cfg.out_dir + "/report.json", rep.to_json_full());

    std::ofstream csv(cfg.out_dir + "/curves.csv");
    csv << "t,solution_besov,y_inf\n";
    const auto find_y = [&](double t) -> std::string {
        for (const auto& [ty, v] : rep.y_inf_curve)
            if (std::abs(ty - t) <= 1e-12 * std::max(1.0, t)) return format_full(v);
        return "";
    };
    for (const auto& [t, v] : rep.solution_besov_curve)
        csv << format_full(t) << "," << format_full(v) << "," << find_y(t) << "\n";

    std::ofstream gp(cfg.out_dir + "/plot.gp");
    gp << "set datafile separator ','\n"
       << "set logscale x\n"
       << "set xlabel 't'\n"
       << "set ylabel 'norm'\n"
       << "plot 'curves.csv' using 1:2 with lines title 'besov(u(t))', \\\n"
       << "     'curves.csv' using 1:3 with lines title '|y(t)|_inf'\n";
}

} // namespace

json InflationReport::to_json_full() const {
    json ladder_json = json::array();
    for (const auto& d : ladder)
        ladder_json.push_back({{"alpha", d.entry.alpha},
                               {"r_alpha", d.entry.r_alpha},
                               {"T_alpha", format_full(d.entry.T_alpha)},
                               {"y_xt", format_full(d.y_xt)},
                               {"skipped", d.skipped}});
    json curve = json::array();
    for (const auto& [t, v] : solution_besov_curve)
        curve.push_back({format_full(t), format_full(v)});
    json ycurve = json::array();
    for (const auto& [t, v] : y_inf_curve) ycurve.push_back({format_full(t), format_full(v)});

    json j{{"params",
            {{"Q", format_full(Q)},
             {"r", r},
             {"K", K},
             {"N", N},
             {"nu", format_full(nu)},
             {"T", format_full(T)}}},
           {"u0_besov", nsinf::to_json(u0_besov)},
           {"u10_plateau", format_full(u10_plateau)},
           {"u10_plateau_t", format_full(u10_plateau_t)},
           {"window", {format_full(window_lo), format_full(window_hi)}},
           {"u11_xt", nsinf::to_json(u11_xt)},
           {"n2_xt", nsinf::to_json(n2_xt)},
           {"solution_besov_curve", curve},
           {"inflation_ratio", format_full(inflation_ratio)},
           {"t_star", format_full(t_star)},
           {"ladder", ladder_json},
           {"y_xt_T", format_full(y_xt_T)},
           {"y_inf_T", format_full(y_inf_T)},
           {"y_last_time", format_full(y_last_time)},
           {"y_inf_curve", ycurve},
           {"audit",
            {{"lhs", format_full(audit.lhs)},
             {"u10_term", format_full(audit.u10_term)},
             {"u11_inf", format_full(audit.u11_inf)},
             {"y_inf", format_full(audit.y_inf)},
             {"holds", audit.holds}}},
           {"manifest_hash", manifest_hash}};
    if (n3_xt) j["n3_xt"] = nsinf::to_json(*n3_xt);
    return j;
}

InflationReport run_inflation_experiment(const ExperimentConfig& cfg) {
    const json resolved = to_json(cfg);

    InflationReport rep;
    rep.manifest_hash = nsinf::manifest_hash(resolved);
    rep.Q = cfg.Q;
    rep.K = cfg.family.K;
    rep.r = cfg.family.r;
    rep.N = cfg.solver.N;
    rep.nu = cfg.nu;
    rep.T = cfg.solver.t_end;

    // 1. construction
    const ExactBundle b = stage("construct", [&] { return make_exact(cfg.family, cfg.Q); });
    const double m1 = double(b.u0.family.magnitude(0));

    // 2. exact norms
    stage("exact-norms", [&] {
        rep.u0_besov = besov_norm(b.u0.field, besov_opts(cfg.norms));
        const Plateau p = u10_plateau(b.split.u10, b.u0.family, cfg.norms);
        rep.u10_plateau = p.value;
        rep.u10_plateau_t = p.t;
        rep.window_lo = p.lo;
        rep.window_hi = p.hi;
        const double T = cfg.solver.t_end;
        const auto xt_of = [&](const TrigField& f) {
            return xt_norm(exact_trajectory(f, T, cfg.norms.xt_points_per_decade), T,
                           carleson_opts(cfg.norms));
        };
        rep.u11_xt = xt_of(b.split.u11);
        rep.n2_xt = xt_of(duhamel_integrate(leray_project(b.fi.n2)));
        const TrigField n3u = duhamel_integrate(leray_project(b.fi.n3));
        if (!n3u.empty()) rep.n3_xt = xt_of(n3u);
        return 0;
    });

    if (!cfg.run_solver) {
        if (!cfg.out_dir.empty()) write_artifacts(rep, cfg, resolved);
        return rep;
    }

    // 3. solver
    const Trajectory traj = stage("solve", [&] {
        check_bandwidth(b.u0.field, cfg.solver.N);
        SolverConfig sc;
        sc.N = cfg.solver.N;
        sc.nu = cfg.nu;
        sc.t_end = cfg.solver.t_end;
        sc.dt_policy = cfg.solver.dt_policy;
        sc.cfl = cfg.solver.cfl;
        sc.dt_fixed = cfg.solver.dt_fixed;
        sc.dt_max = cfg.solver.dt_max;
        sc.snapshot_times =
            log_schedule(cfg.solver.snap_t0_factor / (m1 * m1), cfg.solver.t_end,
                         cfg.solver.snapshots_per_decade);
        const GridField u0g = spectralize(b.u0.field, 0.0, cfg.solver.N, cfg.nu);
        return evolve(u0g, sc);
    });

    // 4. solution Besov curve and inflation ratio
    stage("inflation-ratio", [&] {
        BesovOptions bo = besov_opts(cfg.norms);
        bo.points_per_decade = std::min(bo.points_per_decade, 32);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const double t = traj.times[i];
            const double v = snapshot_besov(traj.snaps[i], bo).value;
            rep.solution_besov_curve.emplace_back(t, v);
            const double ratio = v / rep.u0_besov.value;
            if (ratio > rep.inflation_ratio) {
                rep.inflation_ratio = ratio;
                rep.t_star = t;
            }
        }
        return 0;
    });

    // 5. remainder and ladder
    stage("remainder", [&] {
        const Trajectory ytraj = compute_remainder(traj, b.u0, b.fi.u1);
        const CarlesonOptions co = carleson_opts(cfg.norms);
        rep.y_xt_T = xt_norm(ytraj, cfg.solver.t_end, co).value;
        const TimeLadder ladder = build_time_ladder(cfg.Q, b.u0.family);
        for (const auto& entry : ladder.entries) {
            LadderDatum d;
            d.entry = entry;
            try {
                d.y_xt = xt_norm(ytraj, entry.T_alpha, co).value;
            } catch (const ConfigError&) {
                d.skipped = true; // T_alpha below the Carleson resolution floor
            }
            rep.ladder.push_back(d);
        }
        for (std::size_t i = 0; i < ytraj.size(); ++i) {
            const double t = ytraj.times[i];
            const double v = snapshot_linf(ytraj.snaps[i], cfg.norms.oversample).value;
            rep.y_inf_curve.emplace_back(t, v);
            if (t <= cfg.solver.t_end * (1.0 + 1e-9)) {
                rep.y_inf_T = v;
                rep.y_last_time = t;
            }
        }
        return 0;
    });

    // 6. triangle audit at t*
    stage("audit", [&] {
        const double t = rep.t_star;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < traj.size(); ++i)
            if (std::abs(traj.times[i] - t) < 1e-12 * std::max(1.0, t)) idx = i;
        TrigField diff;
        if (const GridField* g = std::get_if<GridField>(&traj.snaps[idx])) {
            auto f = sparsify(*g, 1e-13, 262144);
            if (!f) throw BudgetError("audit: snapshot too dense to sparsify");
            diff = *f;
        } else {
            diff = std::get<TrigField>(traj.snaps[idx]);
        }
        diff = diff - heat_flow(b.u0.field).at_time(t);
        rep.audit.lhs = besov_norm(diff, besov_opts(cfg.norms)).value;
        rep.audit.u10_term =
            besov_norm(b.split.u10.at_time(t), besov_opts(cfg.norms)).value;
        rep.audit.u11_inf = linf_norm(b.split.u11, t, cfg.norms.oversample).value;
        double y_inf_at = 0.0;
        for (const auto& [ty, v] : rep.y_inf_curve)
            if (std::abs(ty - t) < 1e-12 * std::max(1.0, t)) y_inf_at = v;
        rep.audit.y_inf = y_inf_at;
        const double slack = 1e-9 * std::max(1.0, rep.audit.u10_term);
        rep.audit.holds =
            rep.audit.lhs >= rep.audit.u10_term - rep.audit.u11_inf - rep.audit.y_inf - slack;
        return 0;
    });

    if (!cfg.out_dir.empty()) write_artifacts(rep, cfg, resolved);
    return rep;
}

// --- sweep --------------------------------------------------------------------

namespace {

std::string csv_header() {
    return "Q,r,K,N,nu,T,u0_besov,u10_plateau,u11_xt,n2_xt,n3_xt,inflation_ratio,t_star,"
           "y_xt_T,y_inf_T,audit_holds,manifest_hash";
}

std::string csv_row(const InflationReport& r) {
    std::ostringstream os;
    os << format_full(r.Q) << "," << r.r << "," << r.K << "," << r.N << ","
       << format_full(r.nu) << "," << format_full(r.T) << ","
       << format_full(r.u0_besov.value) << "," << format_full(r.u10_plateau) << ","
       << format_full(r.u11_xt.value) << "," << format_full(r.n2_xt.value) << ","
       << (r.n3_xt ? format_full(r.n3_xt->value) : std::string()) << ","
       << format_full(r.inflation_ratio) << "," << format_full(r.t_star) << ","
       << format_full(r.y_xt_T) << "," << format_full(r.y_inf_T) << ","
       << (r.audit.holds ? 1 : 0) << "," << r.manifest_hash;
    return os.str();
}

} // namespace

SweepResult sweep(const ExperimentConfig& cfg) {
    std::vector<double> qs = cfg.sweep_Q.empty() ? std::vector<double>{cfg.Q} : cfg.sweep_Q;
    std::vector<int> rs = cfg.sweep_r.empty() ? std::vector<int>{cfg.family.r} : cfg.sweep_r;
    std::vector<std::int64_t> ks =
        cfg.sweep_K.empty() ? std::vector<std::int64_t>{cfg.family.K} : cfg.sweep_K;

    struct Job {
        ExperimentConfig cfg;
        std::size_t index;
    };
    std::vector<Job> jobs;
    for (std::int64_t K : ks)
        for (int r : rs)
            for (double q : qs) {
                ExperimentConfig c = cfg;
                c.family.K = K;
                c.family.r = r;
                c.Q = q;
                const bool keep_magnitudes = !cfg.family.magnitudes.empty() &&
                                             r == cfg.family.r && K == cfg.family.K;
                if (!keep_magnitudes && c.family.preset == Preset::desk)
                    c.family.magnitudes = ratio2_ladder(K, r);
                c.sweep_Q.clear();
                c.sweep_r.clear();
                c.sweep_K.clear();
                if (!cfg.out_dir.empty())
                    c.out_dir = cfg.out_dir + "/job_" + std::to_string(jobs.size());
                jobs.push_back({std::move(c), jobs.size()});
            }
    if (jobs.size() > cfg.sweep_budget)
        throw BudgetError("sweep: cross product size " + std::to_string(jobs.size()) +
                          " exceeds budget " + std::to_string(cfg.sweep_budget));

    SweepResult result;
    result.reports.resize(jobs.size());
    std::vector<std::string> errors(jobs.size());

    // independent jobs over a small worker pool; results land in config
    // order regardless of completion order
    const unsigned workers =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 2u));
    std::atomic<std::size_t> cursor{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                result.reports[i] = run_inflation_experiment(jobs[i].cfg);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    if (workers <= 1 || jobs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < jobs.size(); ++i)
        if (!errors[i].empty())
            throw NumericalError("sweep job " + std::to_string(i) + ": " + errors[i]);

    std::ostringstream csv;
    csv << csv_header() << "\n";
    for (const auto& r : result.reports) csv << csv_row(r) << "\n";
    result.csv = csv.str();

    result.index = json{{"config", to_json(cfg)},
                        {"manifest_hash", manifest_hash(to_json(cfg))},
                        {"rows", jobs.size()}};
    json rows = json::array();
    for (const auto& r : result.reports)
        rows.push_back({{"Q", format_full(r.Q)},
                        {"r", r.r},
                        {"K", r.K},
                        {"inflation_ratio", format_full(r.inflation_ratio)},
                        {"manifest_hash", r.manifest_hash}});
    result.index["summary"] = rows;

    if (!cfg.out_dir.empty()) {
        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream out(cfg.out_dir + "/sweep.csv", std::ios::binary);
        out << result.csv;
        write_json_file(cfg.out_dir + "/sweep.json", result.index);
    }
    return result;
}

} // namespace nsinf
