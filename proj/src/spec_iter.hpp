#pragma once

// Internal helpers for walking r2c spectral arrays.

#include "nsinf/fft.hpp"

#include <complex>

namespace nsinf::detail {

// Visit every stored bin with its integer frequencies and Parseval
// weight (2 for interior kx, 1 on the kx = 0 and kx = nx/2 planes).
template <typename F>
void for_each_bin(const fft::Shape& s, F&& f) {
    const int nxh = s.nxh();
    for (int iz = 0; iz < s.nz; ++iz) {
        const int kz = fft::Shape::freq_of(iz, s.nz);
        for (int iy = 0; iy < s.ny; ++iy) {
            const int ky = fft::Shape::freq_of(iy, s.ny);
            for (int kx = 0; kx < nxh; ++kx) {
                const double w = (kx == 0 || 2 * kx == s.nx) ? 1.0 : 2.0;
                f(s.spec_index(kx, iy, iz), kx, ky, kz, w);
            }
        }
    }
}

// True if the stored bin is the canonical representative of its +-k pair
// (every kx > 0 bin; on the kx = 0 plane the lexicographically positive
// half plus the DC bin).
inline bool canonical_bin(int kx, int ky, int kz) {
    if (kx > 0) return true;
    if (ky != 0) return ky > 0;
    return kz >= 0;
}

} // namespace nsinf::detail
