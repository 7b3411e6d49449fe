#include "carleson.hpp"

#include "nsinf/errors.hpp"
#include "nsinf/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nsinf::detail {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

struct BallKernel {
    std::vector<double> w;
    double total = 0.0;  // sum of weights (the discrete |B|)
    std::size_t points = 0;
};

// In-ball weights around the origin, min-image wrapped. Collapsed axes
// (extent 1) contribute exact thickness factors: a chord for one
// collapsed axis, a disc area for two. Thickness saturates at the
// period, which only matters for R past the torus scale.
BallKernel build_ball_kernel(const fft::Shape& s, double R) {
    BallKernel k;
    k.w.assign(s.real_size(), 0.0);
    const double radius = std::sqrt(R);
    const int dims[3] = {s.nx, s.ny, s.nz};
    double h[3];
    int omax[3];
    int active = 0;
    for (int a = 0; a < 3; ++a) {
        h[a] = 2.0 * kPi / dims[a];
        if (dims[a] > 1) {
            ++active;
            omax[a] = std::min(dims[a] / 2, int(radius / h[a]) + 1);
        } else {
            omax[a] = 0;
        }
    }
    const int collapsed = 3 - active;

    for (int oz = -omax[2]; oz <= omax[2]; ++oz) {
        // min-image: each residue class once
        if (dims[2] > 1 && (oz < -(dims[2] - 1) / 2 || oz > dims[2] / 2)) continue;
        for (int oy = -omax[1]; oy <= omax[1]; ++oy) {
            if (dims[1] > 1 && (oy < -(dims[1] - 1) / 2 || oy > dims[1] / 2)) continue;
            for (int ox = -omax[0]; ox <= omax[0]; ++ox) {
                if (dims[0] > 1 && (ox < -(dims[0] - 1) / 2 || ox > dims[0] / 2)) continue;
                const double rho2 = (ox * h[0]) * (ox * h[0]) + (oy * h[1]) * (oy * h[1]) +
                                    (oz * h[2]) * (oz * h[2]);
                if (rho2 > R) continue;
                double weight = 1.0;
                if (collapsed == 1) {
                    weight = std::min(2.0 * std::sqrt(R - rho2), 2.0 * kPi);
                } else if (collapsed == 2) {
                    const double rr = R - rho2;
                    weight = std::min(kPi * rr, 4.0 * kPi * kPi);
                } else if (collapsed == 3) {
                    weight = 1.0;
                }
                const int ix = ox >= 0 ? ox : ox + dims[0];
                const int iy = oy >= 0 ? oy : oy + dims[1];
                const int iz = oz >= 0 ? oz : oz + dims[2];
                k.w[s.real_index(ix, iy, iz)] += weight;
                k.total += weight;
                ++k.points;
            }
        }
    }
    return k;
}

} // namespace

CarlesonResult carleson_sup(const fft::Shape& shape, const std::vector<double>& times,
                            const std::function<void(std::size_t, std::vector<double>&)>& load_q,
                            const CarlesonParams& params) {
    if (times.empty()) throw ConfigError("carleson_sup: no time nodes");
    if (!(params.T > 0.0)) throw ConfigError("carleson_sup: T must be positive");

    // cell size of the active axes, for the resolution floor
    double h_active = 0.0;
    int active = 0;
    for (int n : {shape.nx, shape.ny, shape.nz})
        if (n > 1) {
            h_active = std::max(h_active, 2.0 * kPi / n);
            ++active;
        }
    if (active == 0) throw ConfigError("carleson_sup: field excites no axis");

    const double r_floor =
        (params.min_radius_cells * h_active) * (params.min_radius_cells * h_active);

    // the dyadic ladder, ascending
    std::vector<double> rs;
    for (double R = params.T; R >= r_floor; R /= 2.0) {
        if (params.r_cap > 0.0 && R > params.r_cap) continue;
        rs.push_back(R);
    }
    std::reverse(rs.begin(), rs.end());
    if (rs.empty())
        throw ConfigError(
            "carleson_sup: resolution insufficient for the smallest dyadic R "
            "(grid too coarse for this T)");

    const std::size_t n = shape.real_size();
    std::vector<double> prefix(n, 0.0), q_prev(n), q_cur(n), q_interp(n), work(n);
    std::vector<std::complex<double>> spec_p(shape.spec_size()), spec_w(shape.spec_size());

    CarlesonResult result;
    result.r_samples = int(rs.size());

    const auto evaluate_R = [&](double R, const std::vector<double>& p_at_R) {
        const BallKernel ball = build_ball_kernel(shape, R);
        if (active == 3 && ball.points < params.min_ball_points_3d) return;
        if (ball.total <= 0.0) return;
        fft::forward(shape, p_at_R.data(), spec_p.data());
        fft::forward(shape, ball.w.data(), spec_w.data());
        const double scale = double(n) / ball.total;
        for (std::size_t i = 0; i < spec_p.size(); ++i) spec_p[i] *= spec_w[i] * scale;
        fft::backward(shape, spec_p.data(), work.data());
        double best = 0.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (work[i] > best) {
                best = work[i];
                arg = i;
            }
        if (best > result.value_sq) {
            result.value_sq = best;
            result.R = R;
            const std::size_t ix = arg % shape.nx;
            const std::size_t iy = (arg / shape.nx) % shape.ny;
            const std::size_t iz = arg / (std::size_t(shape.nx) * shape.ny);
            result.x0 = {2.0 * kPi * double(ix) / shape.nx,
                         2.0 * kPi * double(iy) / shape.ny,
                         2.0 * kPi * double(iz) / shape.nz};
        }
    };

    // walk the nodes, maintaining the trapezoid prefix integral and
    // stopping at each dyadic boundary on the way
    std::size_t next_r = 0;
    load_q(0, q_prev);
    double t_prev = times[0];
    if (t_prev > 0.0) {
        // leading rectangle [0, t_0]
        kernels::axpy(prefix.data(), t_prev, q_prev.data(), n);
    }
    while (next_r < rs.size() && rs[next_r] <= t_prev + 1e-300) {
        evaluate_R(rs[next_r], prefix);
        ++next_r;
    }

    for (std::size_t node = 1; node < times.size(); ++node) {
        const double t = times[node];
        if (next_r >= rs.size()) break;
        load_q(node, q_cur);

        while (next_r < rs.size() && rs[next_r] <= t * (1.0 + 1e-12)) {
            const double R = rs[next_r];
            const double theta = (R - t_prev) / (t - t_prev);
            for (std::size_t i = 0; i < n; ++i)
                q_interp[i] = q_prev[i] + theta * (q_cur[i] - q_prev[i]);
            // prefix + partial trapezoid up to R
            std::vector<double>& partial = q_interp;
            for (std::size_t i = 0; i < n; ++i)
                partial[i] = prefix[i] + 0.5 * (R - t_prev) * (q_prev[i] + q_interp[i]);
            evaluate_R(R, partial);
            ++next_r;
        }

        const double half = 0.5 * (t - t_prev);
        kernels::axpy(prefix.data(), half, q_prev.data(), n);
        kernels::axpy(prefix.data(), half, q_cur.data(), n);
        std::swap(q_prev, q_cur);
        t_prev = t;
    }

    if (next_r < rs.size())
        throw ConfigError("carleson_sup: trajectory does not cover (0, T]");
    return result;
}

} // namespace nsinf::detail
