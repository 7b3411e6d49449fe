#pragma once

#include "nsinf/construction.hpp"
#include "nsinf/grid_field.hpp"
#include "nsinf/trajectory.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace nsinf {

enum class DtPolicy { cfl, fixed };

struct SolverConfig {
    int N = 64;
    double nu = 1.0;
    double t_end = 1.0;
    DtPolicy dt_policy = DtPolicy::cfl;
    double cfl = 0.5;       // dt = cfl * dx / max|u|
    double dt_fixed = 1e-3; // used when dt_policy == fixed
    double dt_max = 0.05;
    std::vector<double> snapshot_times; // strictly increasing, <= t_end
    bool disable_nonlinear = false;     // Stokes limit (validation)
    double energy_tol = 1e-8;           // abort when energy grows beyond this
    bool compress_snapshots = true;     // sparsify spectra when possible
    std::size_t compress_budget = 65536;
};

/// Bandwidth rule: active modes of the datum must sit inside the
/// dealiased band, N >= 3 * max |k_i|.
void check_bandwidth(const TrigField& f, int N);

/// P(u . grad)u by pseudospectral products with the 2/3 dealias rule.
GridField nonlinear_term(const GridField& u);

/// Integrating-factor RK4 time integration of
///     du/dt = nu Laplacian u - P(u.grad)u
/// with the viscous factor applied exactly. Snapshots are emitted at
/// cfg.snapshot_times (the integrator lands on them exactly).
Trajectory evolve(const GridField& u0, const SolverConfig& cfg);

/// y(t) = u(t) - e^{t Laplacian}u0 + u1(t) snapshotwise. The exact
/// fields are truncated to the solver's dealiased band so the remainder
/// lives in the resolved subspace.
Trajectory compute_remainder(const Trajectory& traj, const InitialData& u0,
                             const TrigField& u1);

struct Diagnostics {
    double energy = 0.0;
    double enstrophy = 0.0;
    double max_divergence = 0.0;
    // (shell radius bucket, energy in bucket), nonzero buckets only
    std::vector<std::pair<double, double>> spectrum_by_shell;
    // wavevectors above 1e-12 of the peak coefficient (capped at 256)
    std::vector<IVec3> active_modes;
};

Diagnostics diagnostics(const GridField& u);

} // namespace nsinf
