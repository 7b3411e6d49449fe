#include "nsinf/solver.hpp"

#include "nsinf/calculus.hpp"
#include "nsinf/errors.hpp"
#include "nsinf/kernels.hpp"
#include "spec_iter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace nsinf {

void check_bandwidth(const TrigField& f, int N) {
    const std::int64_t kmax = f.max_wavenumber();
    if (3 * kmax > N)
        throw ConfigError("solver bandwidth: need N >= 3 * max|k_i| = " +
                          std::to_string(3 * kmax) + ", got N = " + std::to_string(N));
}

namespace {

// -P(u.grad)u, pseudospectral with 2/3 dealiasing. max_u (if non-null)
// receives max|u| over the lattice, a byproduct of the real-space pass.
GridField rhs_nonlinear(const GridField& u, double* max_u) {
    const fft::Shape s = u.shape();
    const std::size_t nreal = s.real_size();

    std::vector<double> ur[3];
    for (int c = 0; c < 3; ++c) {
        ur[c].resize(nreal);
        fft::backward(s, u.spec[c].data(), ur[c].data());
    }
    if (max_u)
        *max_u = std::sqrt(
            kernels::max_mag3_sq(ur[0].data(), ur[1].data(), ur[2].data(), nreal));

    GridField out;
    out.N = u.N;
    out.time = u.time;
    out.nu = u.nu;
    out.allocate();

    // w_ij = u_i u_j for the six unique pairs; accumulate
    // rhs_i = -i k_j (w_ij)^ in spectral space.
    std::vector<double> prod(nreal);
    std::vector<std::complex<double>> what(s.spec_size());
    static const int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    for (const auto& pr : pairs) {
        const int a = pr[0], b = pr[1];
        kernels::mul(prod.data(), ur[a].data(), ur[b].data(), nreal);
        fft::forward(s, prod.data(), what.data());
        detail::for_each_bin(s, [&](std::size_t i, int kx, int ky, int kz, double) {
            const int k[3] = {kx, ky, kz};
            // d_j(u_a u_b) contributes to component a (j = b) and, for
            // off-diagonal pairs, to component b (j = a).
            const std::complex<double> w = what[i];
            const std::complex<double> iw(-w.imag(), w.real()); // i * w
            out.spec[a][i] += double(k[b]) * iw;
            if (a != b) out.spec[b][i] += double(k[a]) * iw;
        });
    }

    apply_dealias(out);
    leray_project_grid(out);
    for (int c = 0; c < 3; ++c)
        for (auto& v : out.spec[c]) v = -v;
    return out;
}

void apply_viscous_factor(GridField& g, const std::vector<double>& factor) {
    for (int c = 0; c < 3; ++c)
        kernels::apply_factor_interleaved(reinterpret_cast<double*>(g.spec[c].data()),
                                          factor.data(), factor.size());
}

std::vector<double> make_viscous_factor(const fft::Shape& s, double nu, double dt) {
    std::vector<double> f(s.spec_size());
    detail::for_each_bin(s, [&](std::size_t i, int kx, int ky, int kz, double) {
        const double ksq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        f[i] = std::exp(-nu * ksq * dt);
    });
    return f;
}

void emit_snapshot(Trajectory& traj, const GridField& g, const SolverConfig& cfg) {
    traj.times.push_back(g.time);
    if (cfg.compress_snapshots) {
        if (auto f = sparsify(g, 1e-14, cfg.compress_budget)) {
            traj.snaps.emplace_back(std::move(*f));
            return;
        }
    }
    traj.snaps.emplace_back(g);
}

} // namespace

GridField nonlinear_term(const GridField& u) {
    GridField r = rhs_nonlinear(u, nullptr);
    for (int c = 0; c < 3; ++c)
        for (auto& v : r.spec[c]) v = -v;
    return r;
}

Trajectory evolve(const GridField& u0, const SolverConfig& cfg) {
    if (cfg.t_end <= 0.0) throw ConfigError("evolve: t_end must be positive");
    if (u0.N != cfg.N) throw ConfigError("evolve: datum resolution != cfg.N");

    std::vector<double> schedule = cfg.snapshot_times;
    if (schedule.empty()) schedule.push_back(cfg.t_end);
    if (!std::is_sorted(schedule.begin(), schedule.end()))
        throw ConfigError("evolve: snapshot times must be increasing");
    if (schedule.back() > cfg.t_end + 1e-12)
        throw ConfigError("evolve: snapshot beyond t_end");

    GridField u = u0;
    u.nu = cfg.nu;
    u.time = 0.0;
    apply_dealias(u);
    leray_project_grid(u);
    if (u.max_divergence() > 1e-10)
        throw NumericalError("evolve: datum is not divergence-free after projection");

    Trajectory traj;
    traj.source = TrajectorySource::solver;

    std::size_t next_snap = 0;
    if (schedule[0] == 0.0) {
        emit_snapshot(traj, u, cfg);
        ++next_snap;
    }

    const fft::Shape s = u.shape();
    const double dx = 2.0 * std::numbers::pi_v<double> / cfg.N;
    double energy_prev = u.energy();

    std::vector<double> e_half;
    double dt_cached = -1.0;

    GridField stage, acc, nl;
    double t = 0.0;
    long steps = 0;
    while (next_snap < schedule.size()) {
        // first stage (also yields max|u| for the CFL clock)
        double max_u = 0.0;
        if (cfg.disable_nonlinear) {
            nl = u;
            for (int c = 0; c < 3; ++c) std::fill(nl.spec[c].begin(), nl.spec[c].end(), std::complex<double>(0.0));
        } else {
            nl = rhs_nonlinear(u, &max_u);
        }

        double dt;
        if (cfg.dt_policy == DtPolicy::fixed)
            dt = cfg.dt_fixed;
        else
            dt = (max_u > 1e-12) ? cfg.cfl * dx / max_u : cfg.dt_max;
        dt = std::min(dt, cfg.dt_max);
        const double t_stop = schedule[next_snap];
        if (t + dt >= t_stop - 1e-14 * std::max(1.0, t_stop)) dt = t_stop - t;
        if (dt <= 0.0) throw NumericalError("evolve: nonpositive time step");

        if (dt != dt_cached) {
            e_half = make_viscous_factor(s, cfg.nu, 0.5 * dt);
            dt_cached = dt;
        }

        // integrating-factor RK4:
        //   k1 = N(u)
        //   k2 = N(E(u + dt/2 k1))
        //   k3 = N(E u + dt/2 k2)
        //   k4 = N(E^2 u + dt E k3)
        //   u <- E^2 u + dt/6 (E^2 k1 + 2 E (k2 + k3) + k4)
        // where E = exp(nu Laplacian dt/2) is applied exactly.

        // acc = E^2 (u + dt/6 k1)
        acc = u;
        acc.add_scaled(nl, dt / 6.0);
        apply_viscous_factor(acc, e_half);
        apply_viscous_factor(acc, e_half);

        // stage = E (u + dt/2 k1)
        stage = u;
        stage.add_scaled(nl, 0.5 * dt);
        apply_viscous_factor(stage, e_half);

        // k2
        if (!cfg.disable_nonlinear) nl = rhs_nonlinear(stage, nullptr);
        // acc += dt/3 E k2 ; stage = E u + dt/2 k2
        if (!cfg.disable_nonlinear) {
            GridField ek2 = nl;
            apply_viscous_factor(ek2, e_half);
            acc.add_scaled(ek2, dt / 3.0);
        }
        stage = u;
        apply_viscous_factor(stage, e_half);
        if (!cfg.disable_nonlinear) stage.add_scaled(nl, 0.5 * dt);

        // k3
        if (!cfg.disable_nonlinear) {
            nl = rhs_nonlinear(stage, nullptr);
            GridField ek3 = nl;
            apply_viscous_factor(ek3, e_half);
            acc.add_scaled(ek3, dt / 3.0);
        }
        // stage = E^2 u + dt E k3
        stage = u;
        apply_viscous_factor(stage, e_half);
        apply_viscous_factor(stage, e_half);
        if (!cfg.disable_nonlinear) {
            GridField ek3 = nl;
            apply_viscous_factor(ek3, e_half);
            stage.add_scaled(ek3, dt);
        }

        // k4
        if (!cfg.disable_nonlinear) {
            nl = rhs_nonlinear(stage, nullptr);
            acc.add_scaled(nl, dt / 6.0);
        }

        u = std::move(acc);
        t += dt;
        u.time = t;
        ++steps;

        const double energy = u.energy();
        if (!std::isfinite(energy))
            throw NumericalError("evolve: non-finite energy at t = " + std::to_string(t));
        if (energy > energy_prev * (1.0 + cfg.energy_tol))
            throw NumericalError(
                "evolve: energy increased beyond tolerance at t = " + std::to_string(t) +
                " (" + std::to_string(energy_prev) + " -> " + std::to_string(energy) +
                "); likely under-resolved");
        energy_prev = energy;

        if (std::abs(t - t_stop) <= 1e-14 * std::max(1.0, t_stop)) {
            if (u.max_divergence() > 1e-10)
                throw NumericalError("evolve: snapshot failed the divergence invariant");
            emit_snapshot(traj, u, cfg);
            ++next_snap;
        }
        if (steps > 100'000'000L) throw BudgetError("evolve: step budget exceeded");
    }
    return traj;
}

Trajectory compute_remainder(const Trajectory& traj, const InitialData& u0,
                             const TrigField& u1) {
    if (traj.source != TrajectorySource::solver)
        throw ConfigError("compute_remainder: trajectory must come from evolve");

    // recover the solver resolution from the first grid snapshot, or
    // from the compressed spectra's bandwidth rule when all compressed
    int N = 0;
    for (const auto& snap : traj.snaps)
        if (const GridField* g = std::get_if<GridField>(&snap)) {
            N = g->N;
            break;
        }
    if (N == 0) {
        std::int64_t kmax = std::max(u0.field.max_wavenumber(), u1.max_wavenumber());
        for (const auto& snap : traj.snaps)
            kmax = std::max(kmax, std::get<TrigField>(snap).max_wavenumber());
        N = 4;
        while (N < 3 * kmax) N *= 2;
    }

    const TrigField flowed = heat_flow(u0.field);

    Trajectory out;
    out.source = TrajectorySource::solver;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        GridField y;
        if (const GridField* g = std::get_if<GridField>(&traj.snaps[i])) {
            if (g->N != N) throw ConfigError("compute_remainder: mixed resolutions");
            y = *g;
        } else {
            y = spectralize(std::get<TrigField>(traj.snaps[i]), t, N);
        }
        const GridField e0 = spectralize_truncated(flowed.at_time(t), t, N);
        const GridField u1t = spectralize_truncated(u1.at_time(t), t, N);
        y.add_scaled(e0, -1.0);
        y.add_scaled(u1t, 1.0);
        y.time = t;

        out.times.push_back(t);
        if (auto f = sparsify(y, 1e-14, 65536))
            out.snaps.emplace_back(std::move(*f));
        else
            out.snaps.emplace_back(std::move(y));
    }
    return out;
}

Diagnostics diagnostics(const GridField& u) {
    Diagnostics d;
    d.energy = u.energy();
    d.max_divergence = u.max_divergence();

    const double vol = std::pow(2.0 * std::numbers::pi_v<double>, 3);
    double enst = 0.0;
    std::map<long, double> shells;
    double peak = 0.0;
    detail::for_each_bin(u.shape(), [&](std::size_t i, int kx, int ky, int kz, double w) {
        const double e = std::norm(u.spec[0][i]) + std::norm(u.spec[1][i]) +
                         std::norm(u.spec[2][i]);
        if (e == 0.0) return;
        peak = std::max(peak, std::sqrt(e));
        const Vec3 k{double(kx), double(ky), double(kz)};
        // |k x c|^2 = |k|^2 |c|^2 - |k . c|^2 for divergence-free c; use
        // the exact cross product to stay correct for general inputs
        const std::complex<double> cx = k.y * u.spec[2][i] - k.z * u.spec[1][i];
        const std::complex<double> cy = k.z * u.spec[0][i] - k.x * u.spec[2][i];
        const std::complex<double> cz = k.x * u.spec[1][i] - k.y * u.spec[0][i];
        enst += w * (std::norm(cx) + std::norm(cy) + std::norm(cz));
        const long bucket = std::lround(k.norm());
        shells[bucket] += w * e;
    });
    d.enstrophy = 0.5 * vol * enst;
    for (const auto& [bucket, e] : shells)
        d.spectrum_by_shell.emplace_back(double(bucket), 0.5 * vol * e);

    detail::for_each_bin(u.shape(), [&](std::size_t i, int kx, int ky, int kz, double) {
        if (d.active_modes.size() >= 256 || !detail::canonical_bin(kx, ky, kz)) return;
        const double e = std::sqrt(std::norm(u.spec[0][i]) + std::norm(u.spec[1][i]) +
                                   std::norm(u.spec[2][i]));
        if (e > 1e-12 * peak && !(kx == 0 && ky == 0 && kz == 0))
            d.active_modes.push_back(IVec3{kx, ky, kz});
    });
    return d;
}

} // namespace nsinf
