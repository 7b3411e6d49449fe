#pragma once

// Internal: exact injection of trig modes into r2c spectral arrays of an
// arbitrary shape, and sampling of trig fields onto real lattices.

#include "nsinf/fft.hpp"
#include "nsinf/trig_field.hpp"

#include <complex>
#include <vector>

namespace nsinf::detail {

// cos(k.x): c_k = a/2, c_{-k} = conj; sin(k.x): c_k = -i a/2.
// Canonical modes have k.x >= 0; on the kx = 0 plane both redundant
// stored halves are written to keep the array conjugate-consistent.
void inject_mode(const fft::Shape& s, std::complex<double>* sx, std::complex<double>* sy,
                 std::complex<double>* sz, const TrigMode& m, double t);

// Sample all three components of f frozen at t onto the lattice of s.
// Throws when a mode does not fit the shape's Nyquist range.
void sample_trig_field(const TrigField& f, double t, const fft::Shape& s, double* ux,
                       double* uy, double* uz);

} // namespace nsinf::detail
