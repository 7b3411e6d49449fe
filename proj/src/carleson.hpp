#pragma once

// Internal: the parabolic-cylinder Carleson supremum shared by xt_norm
// and bmo_neg1_norm.
//
//   sup_{x0 in grid} sup_{R dyadic} (1/|B|) int_0^R int_{B(x0,sqrt R)} |u|^2
//
// The time integral is a trapezoid prefix over the supplied nodes (plus
// a leading rectangle when the first node is positive); the ball average
// is a min-image correlation with the in-ball indicator, evaluated for
// every center at once through the FFT. Axes the field does not excite
// are collapsed and enter through exact slab thickness weights.

#include "nsinf/fft.hpp"
#include "nsinf/vec3.hpp"

#include <functional>
#include <vector>

namespace nsinf::detail {

struct CarlesonParams {
    double T = 0.0;     // dyadic ladder starts here: R in {T, T/2, ...}
    double r_cap = 0.0; // optional upper cap on R (bmo torus saturation)
    double min_radius_cells = 3.0;
    std::size_t min_ball_points_3d = 100;
};

struct CarlesonResult {
    double value_sq = 0.0; // the sup of the averaged integral (pre-sqrt)
    Vec3 x0;
    double R = 0.0;
    int r_samples = 0;
};

/// load_q(node, q) fills |u(.,t_node)|^2 on the grid (size shape.real_size()).
CarlesonResult carleson_sup(const fft::Shape& shape, const std::vector<double>& times,
                            const std::function<void(std::size_t, std::vector<double>&)>& load_q,
                            const CarlesonParams& params);

} // namespace nsinf::detail
