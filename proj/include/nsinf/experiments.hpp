#pragma once

#include "nsinf/construction.hpp"
#include "nsinf/norms.hpp"
#include "nsinf/solver.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nsinf {

struct FamilyConfig {
    std::int64_t K = 2;
    int r = 1;
    Preset preset = Preset::desk;
    std::vector<std::int64_t> magnitudes; // optional explicit desk shells
};

struct NormSettings {
    int besov_points_per_decade = 64;
    double besov_refine_tol = 1e-6;
    int xt_points_per_decade = 16;
    int oversample = 2;
};

struct SolverSettings {
    int N = 128;
    double t_end = 0.3;
    DtPolicy dt_policy = DtPolicy::cfl;
    double cfl = 0.5;
    double dt_fixed = 1e-3;
    double dt_max = 0.02;
    int snapshots_per_decade = 16;
    double snap_t0_factor = 1e-4; // first snapshot at factor / |k1|^2
};

struct ExperimentConfig {
    FamilyConfig family;
    double Q = 2.0;
    double nu = 1.0;
    SolverSettings solver;
    NormSettings norms;
    bool run_solver = true;
    // sweep axes (empty: use the scalar value)
    std::vector<double> sweep_Q;
    std::vector<int> sweep_r;
    std::vector<std::int64_t> sweep_K;
    std::size_t sweep_budget = 64;
    std::string out_dir;
    std::uint64_t seed = 20102010;
};

nlohmann::json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

FrequencyFamily build_family(const FamilyConfig& fc);

struct LadderEntry {
    int alpha = 0;
    int r_alpha = 0;
    double T_alpha = 0.0;
};

struct TimeLadder {
    int beta = 0;
    bool beta_capped = false; // round(Q^3) exceeded r and was capped
    std::vector<LadderEntry> entries;
};

/// T_alpha ladder: beta = round(Q^3) capped at r, r_alpha rounded from
/// r(1 - alpha/beta), duplicates collapsed, T_alpha = |k_{r_alpha}|^{-2}
/// (|k_0|^{-2} = K^{-2} when r_alpha = 0).
TimeLadder build_time_ladder(double Q, const FrequencyFamily& fam);

enum class ScalingComponent { u0_besov, u10_besov, u11_xt, n2_xt, n3_xt };
enum class ScalingAxis { Q, r };

struct ScalingFit {
    double exponent = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0; // bootstrap 95%
    std::vector<double> xs, ys;      // the fitted points
};

/// Log-log least-squares exponent of the chosen norm against Q or r.
/// Needs >= 3 grid points spanning at least a factor of 4. The r axis
/// uses the minimal ratio-2 desk ladder m_s = 2K^2 * 2^(s-1).
ScalingFit measure_scaling(ScalingComponent component, ScalingAxis axis,
                           const std::vector<double>& grid, const ExperimentConfig& base);

struct LadderDatum {
    LadderEntry entry;
    double y_xt = 0.0;
    bool skipped = false; // T_alpha below the Carleson resolution floor
};

struct TriangleAudit {
    double lhs = 0.0;      // || u(t*) - e^{t* L} u0 ||_B
    double u10_term = 0.0; // || u10(t*) ||_B
    double u11_inf = 0.0;  // || u11(t*) ||_inf
    double y_inf = 0.0;    // || y(t*) ||_inf
    bool holds = false;    // lhs >= u10_term - u11_inf - y_inf (- slack)
};

struct InflationReport {
    // resolved parameters
    double Q = 0.0;
    int r = 0;
    std::int64_t K = 0;
    int N = 0;
    double nu = 0.0;
    double T = 0.0;

    NormReport u0_besov;
    double u10_plateau = 0.0;
    double u10_plateau_t = 0.0;
    double window_lo = 0.0, window_hi = 0.0;
    NormReport u11_xt, n2_xt;
    std::optional<NormReport> n3_xt; // r == 1 has no cross-shell modes

    std::vector<std::pair<double, double>> solution_besov_curve; // (t, |u(t)|_B)
    double inflation_ratio = 0.0;
    double t_star = 0.0;

    std::vector<LadderDatum> ladder;
    double y_xt_T = 0.0;
    double y_inf_T = 0.0;
    double y_last_time = 0.0; // node where y_inf_T was read
    std::vector<std::pair<double, double>> y_inf_curve;

    TriangleAudit audit;
    std::string manifest_hash;

    nlohmann::json to_json_full() const;
};

/// The full pipeline: construct, first iterate and splits, norm
/// estimates, solver run, remainder, ladder norms, inflation ratio.
/// Artifacts (report.json, curves.csv, plot.gp, manifest.json) go to
/// cfg.out_dir when set.
InflationReport run_inflation_experiment(const ExperimentConfig& cfg);

struct SweepResult {
    std::vector<InflationReport> reports;
    std::string csv;         // aggregated rows, deterministic order
    nlohmann::json index;    // config + per-row summary + fits
};

/// Cross product of the sweep axes, run as independent jobs; writes
/// sweep.csv and sweep.json to cfg.out_dir when set.
SweepResult sweep(const ExperimentConfig& cfg);

} // namespace nsinf
