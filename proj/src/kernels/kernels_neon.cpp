// NEON kernels (aarch64). Same no-FMA discipline as the AVX2 backend.

#if defined(__aarch64__)

#include "nsinf/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace nsinf::kernels {
namespace {

void mul_neon(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void apply_factor_neon(double* dst, const double* f, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(dst + i, vmulq_f64(vld1q_f64(dst + i), vld1q_f64(f + i)));
    for (; i < n; ++i) dst[i] *= f[i];
}

void apply_factor_interleaved_neon(double* dst, const double* f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t ff = vdupq_n_f64(f[i]);
        vst1q_f64(dst + 2 * i, vmulq_f64(vld1q_f64(dst + 2 * i), ff));
    }
}

void axpy_neon(double* dst, double a, const double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
        vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), prod));
    }
    for (; i < n; ++i) dst[i] = dst[i] + a * x[i];
}

static inline float64x2_t mag3_sq_vec(const double* x, const double* y,
                                      const double* z, std::size_t i) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    const float64x2_t vz = vld1q_f64(z + i);
    const float64x2_t xy = vaddq_f64(vmulq_f64(vx, vx), vmulq_f64(vy, vy));
    return vaddq_f64(xy, vmulq_f64(vz, vz));
}

void mag3_sq_neon(double* dst, const double* x, const double* y, const double* z,
                  std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(dst + i, mag3_sq_vec(x, y, z, i));
    for (; i < n; ++i) dst[i] = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
}

double max_mag3_sq_neon(const double* x, const double* y, const double* z,
                        std::size_t n) {
    float64x2_t vm = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vm = vmaxq_f64(vm, mag3_sq_vec(x, y, z, i));
    double m = std::max(vgetq_lane_f64(vm, 0), vgetq_lane_f64(vm, 1));
    for (; i < n; ++i) {
        const double s = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
        m = std::max(m, s);
    }
    return m;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

} // namespace

const Backend& neon_backend() {
    static const Backend b{
        mul_neon,
        apply_factor_neon,
        apply_factor_interleaved_neon,
        axpy_neon,
        mag3_sq_neon,
        max_mag3_sq_neon,
        sum_neon,
        dot_neon,
        "neon",
    };
    return b;
}

} // namespace nsinf::kernels

#endif // __aarch64__
