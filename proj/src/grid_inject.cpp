#include "grid_inject.hpp"

#include "nsinf/errors.hpp"

#include <cmath>
#include <string>

namespace nsinf::detail {

void inject_mode(const fft::Shape& s, std::complex<double>* sx, std::complex<double>* sy,
                 std::complex<double>* sz, const TrigMode& m, double t) {
    const Vec3 a = m.amplitude(t);
    std::complex<double>* comp[3] = {sx, sy, sz};

    if (m.k.is_zero()) {
        const std::size_t i = s.spec_index(0, 0, 0);
        for (int c = 0; c < 3; ++c) comp[c][i] += a[c];
        return;
    }
    if (std::abs(m.k.x) > s.nx / 2 - (s.nx > 1 ? 1 : 0) ||
        std::abs(m.k.y) > s.ny / 2 - (s.ny > 1 ? 1 : 0) ||
        std::abs(m.k.z) > s.nz / 2 - (s.nz > 1 ? 1 : 0))
        throw ConfigError("inject_mode: wavenumber outside the grid's Nyquist range");

    const bool is_cos = (m.phase == Phase::cos);
    const auto write = [&](const IVec3& k, bool conjugate) {
        const int iy = fft::Shape::wrap(int(k.y), s.ny);
        const int iz = fft::Shape::wrap(int(k.z), s.nz);
        const std::size_t i = s.spec_index(int(k.x), iy, iz);
        for (int c = 0; c < 3; ++c) {
            const double half = a[c] * 0.5;
            std::complex<double> v = is_cos ? std::complex<double>(half, 0.0)
                                            : std::complex<double>(0.0, -half);
            if (conjugate) v = std::conj(v);
            comp[c][i] += v;
        }
    };
    if (m.k.x > 0) {
        write(m.k, false);
    } else {
        write(m.k, false);
        write(-m.k, true);
    }
}

void sample_trig_field(const TrigField& f, double t, const fft::Shape& s, double* ux,
                       double* uy, double* uz) {
    std::vector<std::complex<double>> sx(s.spec_size()), sy(s.spec_size()),
        sz(s.spec_size());
    for (const auto& m : f.modes()) inject_mode(s, sx.data(), sy.data(), sz.data(), m, t);
    fft::backward(s, sx.data(), ux);
    fft::backward(s, sy.data(), uy);
    fft::backward(s, sz.data(), uz);
}

} // namespace nsinf::detail
