#pragma once

#include "nsinf/grid_field.hpp"
#include "nsinf/trajectory.hpp"
#include "nsinf/trig_field.hpp"
#include "nsinf/vec3.hpp"

#include <string>

namespace nsinf {

enum class NormKind { besov, xt, bmo };

struct NormGrid {
    int nx = 1, ny = 1, nz = 1;
    int t_samples = 0;
    int r_samples = 0;
};

/// A norm value with its argmax witnesses. Re-evaluating the reported
/// functional at the witnesses reproduces `value` (the witness tests do
/// exactly that).
struct NormReport {
    double value = 0.0;
    NormKind kind = NormKind::besov;
    double t_star = 0.0;      // besov: argmax of sqrt(t)||e^{tL}f||;
                              // xt: argmax node of the sup term
    Vec3 x0_star;             // spatial witness (linf point / ball center)
    double R_star = 0.0;      // Carleson witness (xt, bmo)
    double sup_part = 0.0;    // xt: sup_t sqrt(t)||u(t)||_inf
    double carleson_part = 0.0;
    NormGrid grid;
    std::string tolerance_note;
};

struct LinfResult {
    double value = 0.0;
    Vec3 x_star;
};

/// sup_x |f(x,t)| (Euclidean magnitude), by spectral sampling on a grid
/// of at least 2*oversample points per shortest excited period followed
/// by local refinement around the best grid point.
LinfResult linf_norm(const TrigField& f, double t, int oversample = 2);
/// Grid fields go through the sparse spectrum when possible, otherwise
/// a zero-padded inverse transform at `oversample` times the native
/// resolution (no sub-cell refinement on that path).
LinfResult linf_norm(const GridField& g, int oversample = 2);

struct BesovOptions {
    double t_min = 0.0, t_max = 0.0; // both zero: automatic range
    int points_per_decade = 64;
    double refine_tol = 1e-6; // relative golden-section window on t*
    int oversample = 2;
    bool allow_boundary = false;
};

/// sup_{t>0} sqrt(t) ||e^{t Laplacian} f||_inf for a static (constant
/// profile) mean-zero field. Errors out if the sup sits on the range
/// boundary, which signals a non-mean-zero or under-resolved input.
NormReport besov_norm(const TrigField& f, const BesovOptions& opt = {});
NormReport besov_norm(const GridField& g, const BesovOptions& opt = {});

struct CarlesonOptions {
    int points_per_decade = 16; // time nodes for exact trajectories
    int oversample = 2;
    double r_cap = 0.0;  // 0: no cap beyond T (xt); bmo uses (2pi)^2
    std::size_t min_ball_points_3d = 100;
    double min_ball_radius_cells = 3.0;
};

/// Koch-Tataru norm over (0,T]: sup_t sqrt(t)||u||_inf plus the
/// parabolic-cylinder Carleson term with x0 on the grid and R dyadic in
/// {T, T/2, ...} down to the ball-resolution floor.
NormReport xt_norm(const Trajectory& traj, double T, const CarlesonOptions& opt = {});

/// Carleson functional of the heat extension of f, R capped at (2pi)^2
/// (torus saturation; recorded in the tolerance note).
NormReport bmo_neg1_norm(const TrigField& f, const CarlesonOptions& opt = {});

struct BilinearSanity {
    double ratio = 0.0;
    bool degenerate = false; // zero denominator
    double b_norm = 0.0, u_norm = 0.0, v_norm = 0.0;
};

/// ||B(u,v)||_{X_T} / (||u||_{X_T} ||v||_{X_T}) for band-limited
/// exponential-profile fields; B is computed in closed form.
BilinearSanity bilinear_sanity(const TrigField& u, const TrigField& v, double T,
                               const CarlesonOptions& opt = {});

} // namespace nsinf
