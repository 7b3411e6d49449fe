#include "nsinf/grid_field.hpp"

#include "nsinf/errors.hpp"
#include "nsinf/kernels.hpp"
#include "grid_inject.hpp"
#include "spec_iter.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <string>

namespace nsinf {

void GridField::allocate() {
    const std::size_t n = shape().spec_size();
    for (auto& c : spec) c.assign(n, {0.0, 0.0});
}

void GridField::component_real(int c, std::vector<double>& out) const {
    out.resize(shape().real_size());
    fft::backward(shape(), spec[c].data(), out.data());
}

double GridField::max_abs() const {
    std::vector<double> ux, uy, uz;
    component_real(0, ux);
    component_real(1, uy);
    component_real(2, uz);
    return std::sqrt(kernels::max_mag3_sq(ux.data(), uy.data(), uz.data(), ux.size()));
}

double GridField::energy() const {
    const double vol = std::pow(2.0 * std::numbers::pi_v<double>, 3);
    double sum = 0.0;
    detail::for_each_bin(shape(), [&](std::size_t i, int, int, int, double w) {
        sum += w * (std::norm(spec[0][i]) + std::norm(spec[1][i]) + std::norm(spec[2][i]));
    });
    return 0.5 * vol * sum;
}

double GridField::max_divergence() const {
    double worst = 0.0;
    double scale = 0.0;
    detail::for_each_bin(shape(), [&](std::size_t i, int kx, int ky, int kz, double) {
        const std::complex<double> d = double(kx) * spec[0][i] + double(ky) * spec[1][i] +
                                       double(kz) * spec[2][i];
        const double ksq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double mag =
            std::sqrt(std::norm(spec[0][i]) + std::norm(spec[1][i]) + std::norm(spec[2][i]));
        worst = std::max(worst, std::abs(d));
        scale = std::max(scale, std::sqrt(ksq) * mag);
    });
    return scale > 0.0 ? worst / scale : 0.0;
}

GridField& GridField::add_scaled(const GridField& o, double a) {
    if (o.N != N) throw NumericalError("GridField::add_scaled: resolution mismatch");
    for (int c = 0; c < 3; ++c) {
        kernels::axpy(reinterpret_cast<double*>(spec[c].data()), a,
                      reinterpret_cast<const double*>(o.spec[c].data()),
                      2 * spec[c].size());
    }
    return *this;
}

GridField& GridField::scale(double a) {
    for (int c = 0; c < 3; ++c)
        for (auto& v : spec[c]) v *= a;
    return *this;
}

namespace {

GridField spectralize_impl(const TrigField& f, double t, int N, double nu,
                           bool truncate, int* dropped) {
    if (N < 4 || (N & (N - 1)) != 0)
        throw ConfigError("spectralize: N must be a power of two >= 4");
    GridField g;
    g.N = N;
    g.time = t;
    g.nu = nu;
    g.allocate();
    const std::int64_t band = N / 3;
    int skipped = 0;
    for (const auto& m : f.modes()) {
        const std::int64_t kmax =
            std::max({std::abs(m.k.x), std::abs(m.k.y), std::abs(m.k.z)});
        if (kmax > band) {
            if (!truncate)
                throw ConfigError("spectralize: wavenumber " + std::to_string(kmax) +
                                  " outside the dealiased band N/3 = " +
                                  std::to_string(band));
            ++skipped;
            continue;
        }
        detail::inject_mode(g.shape(), g.spec[0].data(), g.spec[1].data(),
                            g.spec[2].data(), m, t);
    }
    if (dropped) *dropped = skipped;
    return g;
}

} // namespace

GridField spectralize(const TrigField& f, double t, int N, double nu) {
    return spectralize_impl(f, t, N, nu, false, nullptr);
}

GridField spectralize_truncated(const TrigField& f, double t, int N, double nu,
                                int* dropped) {
    return spectralize_impl(f, t, N, nu, true, dropped);
}

std::optional<TrigField> sparsify(const GridField& u, double rel_tol,
                                  std::size_t max_modes) {
    double peak = 0.0;
    detail::for_each_bin(u.shape(), [&](std::size_t i, int, int, int, double) {
        for (int c = 0; c < 3; ++c) peak = std::max(peak, std::abs(u.spec[c][i]));
    });
    const double cut = rel_tol * peak;

    TrigField f;
    std::size_t count = 0;
    bool over = false;
    detail::for_each_bin(u.shape(), [&](std::size_t i, int kx, int ky, int kz, double) {
        if (over || !detail::canonical_bin(kx, ky, kz)) return;
        double mag = 0.0;
        for (int c = 0; c < 3; ++c) mag = std::max(mag, std::abs(u.spec[c][i]));
        if (mag <= cut) return;
        if (++count > max_modes) {
            over = true;
            return;
        }
        const IVec3 k{kx, ky, kz};
        if (k.is_zero()) {
            f.add_mode(k, Phase::cos,
                       {u.spec[0][i].real(), u.spec[1][i].real(), u.spec[2][i].real()});
            return;
        }
        const Vec3 ac{2.0 * u.spec[0][i].real(), 2.0 * u.spec[1][i].real(),
                      2.0 * u.spec[2][i].real()};
        const Vec3 as{-2.0 * u.spec[0][i].imag(), -2.0 * u.spec[1][i].imag(),
                      -2.0 * u.spec[2][i].imag()};
        if (ac.norm_sq() > 0.0) f.add_mode(k, Phase::cos, ac);
        if (as.norm_sq() > 0.0) f.add_mode(k, Phase::sin, as);
    });
    if (over) return std::nullopt;
    f.canonicalize();
    return f;
}

void apply_dealias(GridField& u) {
    const std::int64_t band = u.N / 3;
    detail::for_each_bin(u.shape(), [&](std::size_t i, int kx, int ky, int kz, double) {
        if (std::abs(kx) > band || std::abs(ky) > band || std::abs(kz) > band)
            for (int c = 0; c < 3; ++c) u.spec[c][i] = 0.0;
    });
}

void leray_project_grid(GridField& u) {
    detail::for_each_bin(u.shape(), [&](std::size_t i, int kx, int ky, int kz, double) {
        const double ksq = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        if (ksq == 0.0) return;
        const std::complex<double> kdotu =
            double(kx) * u.spec[0][i] + double(ky) * u.spec[1][i] + double(kz) * u.spec[2][i];
        const std::complex<double> s = kdotu / ksq;
        u.spec[0][i] -= double(kx) * s;
        u.spec[1][i] -= double(ky) * s;
        u.spec[2][i] -= double(kz) * s;
    });
}

// --- snapshot persistence --------------------------------------------------
//
// <base>.bin : bytes 0..3   magic "NSGF"
//              bytes 4..7   uint32 endianness tag 0x01020304
//              bytes 8..11  uint32 N
//              bytes 12..19 float64 time
//              bytes 20..27 float64 nu
//              then 3 * N^3 float64: ux, uy, uz samples, x fastest.
// <base>.json: the same header as a human-readable sidecar.

void save_snapshot(const GridField& u, const std::string& path_base) {
    std::ofstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw ConfigError("save_snapshot: cannot open " + path_base + ".bin");
    const char magic[4] = {'N', 'S', 'G', 'F'};
    const std::uint32_t endian = 0x01020304;
    const std::uint32_t n32 = std::uint32_t(u.N);
    bin.write(magic, 4);
    bin.write(reinterpret_cast<const char*>(&endian), 4);
    bin.write(reinterpret_cast<const char*>(&n32), 4);
    bin.write(reinterpret_cast<const char*>(&u.time), 8);
    bin.write(reinterpret_cast<const char*>(&u.nu), 8);
    std::vector<double> buf;
    for (int c = 0; c < 3; ++c) {
        u.component_real(c, buf);
        bin.write(reinterpret_cast<const char*>(buf.data()),
                  std::streamsize(buf.size() * sizeof(double)));
    }
    if (!bin) throw ConfigError("save_snapshot: write failed for " + path_base);

    std::ofstream side(path_base + ".json");
    side << "{\n  \"format\": \"nsgf-1\",\n  \"N\": " << u.N << ",\n  \"time\": " << u.time
         << ",\n  \"nu\": " << u.nu << ",\n  \"payload\": \"3 contiguous float64 arrays"
         << " (ux, uy, uz), x fastest\"\n}\n";
}

GridField load_snapshot(const std::string& path_base) {
    std::ifstream bin(path_base + ".bin", std::ios::binary);
    if (!bin) throw ConfigError("load_snapshot: cannot open " + path_base + ".bin");
    char magic[4];
    std::uint32_t endian = 0, n32 = 0;
    GridField g;
    bin.read(magic, 4);
    bin.read(reinterpret_cast<char*>(&endian), 4);
    bin.read(reinterpret_cast<char*>(&n32), 4);
    bin.read(reinterpret_cast<char*>(&g.time), 8);
    bin.read(reinterpret_cast<char*>(&g.nu), 8);
    if (!bin || std::memcmp(magic, "NSGF", 4) != 0)
        throw ConfigError("load_snapshot: bad header in " + path_base);
    if (endian != 0x01020304)
        throw ConfigError("load_snapshot: endianness mismatch in " + path_base);
    g.N = int(n32);
    g.allocate();
    std::vector<double> buf(g.shape().real_size());
    for (int c = 0; c < 3; ++c) {
        bin.read(reinterpret_cast<char*>(buf.data()),
                 std::streamsize(buf.size() * sizeof(double)));
        if (!bin) throw ConfigError("load_snapshot: truncated payload in " + path_base);
        fft::forward(g.shape(), buf.data(), g.spec[c].data());
    }
    return g;
}

} // namespace nsinf
