#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops shared by the spectral solver and the norm
// estimators. Every kernel has a scalar reference implementation and,
// where the ISA is available, an AVX2 (x86-64) or NEON (aarch64) variant.
// The active backend is chosen once at runtime from CPU capabilities and
// can be overridden (used by the equivalence tests).
//
// Pointwise maps (mul, apply_factor, axpy, ...) are bit-identical across
// backends: the vector variants use the same multiply/add rounding as the
// scalar reference (no FMA contraction). Reductions (sum, max) may differ
// by a few ulp because the accumulation order differs.

namespace nsinf::kernels {

struct Backend {
    // dst[i] = a[i] * b[i]
    void (*mul)(double* dst, const double* a, const double* b, std::size_t n);
    // dst[i] *= f[i]
    void (*apply_factor)(double* dst, const double* f, std::size_t n);
    // interleaved complex dst, one real factor per complex element:
    // dst[2i] *= f[i], dst[2i+1] *= f[i]
    void (*apply_factor_interleaved)(double* dst, const double* f, std::size_t n);
    // dst[i] += a * x[i]
    void (*axpy)(double* dst, double a, const double* x, std::size_t n);
    // dst[i] = x[i]*x[i] + y[i]*y[i] + z[i]*z[i]
    void (*mag3_sq)(double* dst, const double* x, const double* y, const double* z,
                    std::size_t n);
    // max_i (x^2 + y^2 + z^2)
    double (*max_mag3_sq)(const double* x, const double* y, const double* z,
                          std::size_t n);
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);

    const char* name;
};

// Active backend (runtime CPU dispatch on first use).
const Backend& active();

// Force a specific backend: "scalar", "avx2", "neon", or "auto".
// Returns false if the requested backend is not available on this CPU.
bool force_backend(std::string_view name);

const Backend& scalar_backend();
#if defined(__x86_64__)
bool avx2_supported();
const Backend& avx2_backend();
#endif
#if defined(__aarch64__)
const Backend& neon_backend();
#endif

// Convenience forwarders through the active backend.
inline void mul(double* dst, const double* a, const double* b, std::size_t n) {
    active().mul(dst, a, b, n);
}
inline void apply_factor(double* dst, const double* f, std::size_t n) {
    active().apply_factor(dst, f, n);
}
inline void apply_factor_interleaved(double* dst, const double* f, std::size_t n) {
    active().apply_factor_interleaved(dst, f, n);
}
inline void axpy(double* dst, double a, const double* x, std::size_t n) {
    active().axpy(dst, a, x, n);
}
inline void mag3_sq(double* dst, const double* x, const double* y, const double* z,
                    std::size_t n) {
    active().mag3_sq(dst, x, y, z, n);
}
inline double max_mag3_sq(const double* x, const double* y, const double* z,
                          std::size_t n) {
    return active().max_mag3_sq(x, y, z, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}

} // namespace nsinf::kernels
