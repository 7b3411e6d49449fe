#pragma once

#include "nsinf/construction.hpp"
#include "nsinf/trig_field.hpp"

#include <cstddef>
#include <optional>

namespace nsinf {

/// Heat semigroup acting on the initial snapshot of f: every mode's
/// profile rate is shifted by |k|^2, i.e. a constant-profile field turns
/// into its semigroup orbit e^{t Laplacian} f.
TrigField heat_flow(const TrigField& f);

/// Fixed-time heat flow e^{t0 Laplacian} applied spatially: each mode's
/// coefficients scale by exp(-|k|^2 t0), profiles otherwise untouched.
TrigField heat_flow_fixed(const TrigField& f, double t0);

/// (u . grad) w expanded by product-to-sum identities. u must be
/// divergence-free. Throws BudgetError when the product would exceed
/// mode_budget emitted modes.
TrigField advect(const TrigField& u, const TrigField& w,
                 std::size_t mode_budget = 1'000'000);

/// Fourier-side Leray projection: amplitude a -> a - (a.khat) khat.
/// Mean modes pass through unchanged.
TrigField leray_project(const TrigField& f);

struct DuhamelInfo {
    int resonant_terms = 0;      // exact-resonance branch taken
    int near_resonant_terms = 0; // |rate - |k|^2| below tolerance, not equal
    double max_near_resonance_gap = 0.0;
};

/// Closed form of int_0^t e^{(t-tau) Laplacian} f(tau) dtau for fields
/// whose profile terms all have power 0. Relative resonance tolerance
/// eps_res guards user-supplied rates; lattice-derived rates hit the
/// resonant branch exactly.
TrigField duhamel_integrate(const TrigField& f, DuhamelInfo* info = nullptr,
                            double eps_res = 1e-9);

struct FirstIterate {
    TrigField u1; // duhamel(P(advect(e^{tL}u0, e^{tL}u0)))
    TrigField n1; // same-shell difference modes (+-eta), pre-projection
    TrigField n2; // same-shell sum modes (k_s + k_s')
    TrigField n3; // cross-shell modes
};

/// First Picard correction of the mild formulation, with the advection
/// output classified into its difference / same-shell-sum / cross-shell
/// parts (n1 + n2 + n3 reproduces the advection product exactly).
FirstIterate first_iterate(const InitialData& u0);

struct SplitU1 {
    TrigField u10; // the +-eta modes
    TrigField u11; // everything else; u10 + u11 == u1
};

SplitU1 split_u1(const TrigField& u1, const FrequencyFamily& fam);

} // namespace nsinf
