// AVX2 kernels. This translation unit is compiled with -mavx2 (and
// -ffp-contract=off); it must only be entered after the dispatcher has
// confirmed AVX2 support. Multiplies and adds are kept as separate
// instructions so results are bit-identical to the scalar reference.

#if defined(__x86_64__)

#include "nsinf/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace nsinf::kernels {
namespace {

void mul_avx2(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d va = _mm256_loadu_pd(a + i);
        const __m256d vb = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void apply_factor_avx2(double* dst, const double* f, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vd = _mm256_loadu_pd(dst + i);
        const __m256d vf = _mm256_loadu_pd(f + i);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(vd, vf));
    }
    for (; i < n; ++i) dst[i] *= f[i];
}

void apply_factor_interleaved_avx2(double* dst, const double* f, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        // [f0, f1] -> [f0, f0, f1, f1]
        const __m128d fp = _mm_loadu_pd(f + i);
        const __m256d ff =
            _mm256_permute4x64_pd(_mm256_castpd128_pd256(fp), 0b01010000);
        const __m256d vd = _mm256_loadu_pd(dst + 2 * i);
        _mm256_storeu_pd(dst + 2 * i, _mm256_mul_pd(vd, ff));
    }
    for (; i < n; ++i) {
        dst[2 * i] *= f[i];
        dst[2 * i + 1] *= f[i];
    }
}

void axpy_avx2(double* dst, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vd = _mm256_loadu_pd(dst + i);
        const __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(dst + i, _mm256_add_pd(vd, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) dst[i] = dst[i] + a * x[i];
}

static inline __m256d mag3_sq_vec(const double* x, const double* y, const double* z,
                                  std::size_t i) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vz = _mm256_loadu_pd(z + i);
    const __m256d xy = _mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy));
    return _mm256_add_pd(xy, _mm256_mul_pd(vz, vz));
}

void mag3_sq_avx2(double* dst, const double* x, const double* y, const double* z,
                  std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(dst + i, mag3_sq_vec(x, y, z, i));
    for (; i < n; ++i) dst[i] = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
}

double max_mag3_sq_avx2(const double* x, const double* y, const double* z,
                        std::size_t n) {
    __m256d vm = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vm = _mm256_max_pd(vm, mag3_sq_vec(x, y, z, i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vm);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) {
        const double s = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
        m = std::max(m, s);
    }
    return m;
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i];
    return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vx, vy));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

} // namespace

const Backend& avx2_backend() {
    static const Backend b{
        mul_avx2,
        apply_factor_avx2,
        apply_factor_interleaved_avx2,
        axpy_avx2,
        mag3_sq_avx2,
        max_mag3_sq_avx2,
        sum_avx2,
        dot_avx2,
        "avx2",
    };
    return b;
}

} // namespace nsinf::kernels

#endif // __x86_64__
