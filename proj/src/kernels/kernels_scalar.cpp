// Scalar reference kernels. Compiled with -ffp-contract=off so that the
// rounding of every pointwise map matches the vector backends exactly.

#include "nsinf/kernels.hpp"

#include <algorithm>

namespace nsinf::kernels {
namespace {

void mul_scalar(double* dst, const double* a, const double* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void apply_factor_scalar(double* dst, const double* f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] *= f[i];
}

void apply_factor_interleaved_scalar(double* dst, const double* f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        dst[2 * i] *= f[i];
        dst[2 * i + 1] *= f[i];
    }
}

void axpy_scalar(double* dst, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = dst[i] + a * x[i];
}

void mag3_sq_scalar(double* dst, const double* x, const double* y, const double* z,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        dst[i] = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
}

double max_mag3_sq_scalar(const double* x, const double* y, const double* z,
                          std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (x[i] * x[i] + y[i] * y[i]) + z[i] * z[i];
        m = std::max(m, s);
    }
    return m;
}

double sum_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

} // namespace

const Backend& scalar_backend() {
    static const Backend b{
        mul_scalar,
        apply_factor_scalar,
        apply_factor_interleaved_scalar,
        axpy_scalar,
        mag3_sq_scalar,
        max_mag3_sq_scalar,
        sum_scalar,
        dot_scalar,
        "scalar",
    };
    return b;
}

} // namespace nsinf::kernels
