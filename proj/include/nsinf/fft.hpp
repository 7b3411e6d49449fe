#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <vector>

namespace nsinf::fft {

/// Real-to-complex 3D transform shape. The x axis is contiguous and
/// halved in the spectral view (bins kx = 0..nx/2); y and z wrap with
/// the usual symmetric decoding. Collapsed axes (extent 1) are legal and
/// cheap, which the norm estimators use for fields that only excite one
/// or two axes.
struct Shape {
    int nx = 1, ny = 1, nz = 1;

    std::size_t real_size() const {
        return std::size_t(nx) * std::size_t(ny) * std::size_t(nz);
    }
    int nxh() const { return nx / 2 + 1; }
    std::size_t spec_size() const {
        return std::size_t(nxh()) * std::size_t(ny) * std::size_t(nz);
    }
    std::size_t real_index(int ix, int iy, int iz) const {
        return (std::size_t(iz) * ny + iy) * nx + ix;
    }
    std::size_t spec_index(int kx, int iy, int iz) const {
        return (std::size_t(iz) * ny + iy) * nxh() + kx;
    }
    // symmetric decode of a wrapped index
    static int freq_of(int idx, int n) { return idx <= n / 2 ? idx : idx - n; }
    static int wrap(int freq, int n) { return freq >= 0 ? freq : freq + n; }

    auto operator<=>(const Shape&) const = default;
};

/// Forward transform, normalized so the spectral array holds the
/// coefficients of f(x) = sum_k c_k e^{i k.x}.
void forward(const Shape& shape, const double* real, std::complex<double>* spec);

/// Inverse of forward(); the spectral input is left untouched.
void backward(const Shape& shape, const std::complex<double>* spec, double* real);

/// Threads used by large transforms (plans are created lazily per shape
/// with deterministic FFTW_ESTIMATE planning; results are run-to-run
/// reproducible). Must be called before the first transform to matter.
void set_threads(int n);

} // namespace nsinf::fft
