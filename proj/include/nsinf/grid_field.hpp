#pragma once

#include "nsinf/fft.hpp"
#include "nsinf/trig_field.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace nsinf {

/// Velocity field sampled on the N^3 lattice over [0,2pi)^3, held as
/// r2c spectral coefficients of each component (f = sum_k c_k e^{ik.x},
/// conjugate symmetry implicit). Real-space views are materialized on
/// demand through the FFT layer.
struct GridField {
    int N = 0;
    double time = 0.0;
    double nu = 1.0;
    std::array<std::vector<std::complex<double>>, 3> spec;

    fft::Shape shape() const { return {N, N, N}; }
    void allocate();

    // real samples of one component (size N^3)
    void component_real(int c, std::vector<double>& out) const;

    double max_abs() const;      // max Euclidean magnitude over the lattice
    double energy() const;       // 1/2 int |u|^2 dx (Parseval)
    double max_divergence() const; // max|k.c_k| / max|k||c_k|

    GridField& add_scaled(const GridField& o, double a);
    GridField& scale(double a);
};

/// Exact injection of a trig field frozen at time t. Throws when any
/// wavenumber reaches the dealiased band edge (|k_i| > N/3).
GridField spectralize(const TrigField& f, double t, int N, double nu = 1.0);

/// Same, but silently drops out-of-band modes (used when comparing
/// exact references against a band-limited solver run). The number of
/// dropped modes is reported through `dropped` when non-null.
GridField spectralize_truncated(const TrigField& f, double t, int N, double nu = 1.0,
                                int* dropped = nullptr);

/// Inverse of spectralize: harvest significant coefficients into a trig
/// field with constant profiles. Returns nullopt when more than
/// max_modes bins survive the relative threshold.
std::optional<TrigField> sparsify(const GridField& u, double rel_tol = 1e-13,
                                  std::size_t max_modes = 65536);

/// Zero every coefficient with any |k_i| > floor(N/3) (2/3 rule).
void apply_dealias(GridField& u);

/// Fourier-side Leray projection of every coefficient.
void leray_project_grid(GridField& u);

// Flat binary snapshot + JSON sidecar (see README for the byte layout).
void save_snapshot(const GridField& u, const std::string& path_base);
GridField load_snapshot(const std::string& path_base);

} // namespace nsinf
