#pragma once

#include "nsinf/vec3.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nsinf {

/// One term of a time profile: coeff * t^power * exp(-rate * t).
/// power is restricted to 0 or 1 (enough for the first nonlinear
/// correction; the resonant branch of the time integral produces the
/// t*exp terms).
struct ProfileTerm {
    double coeff = 0.0;
    double rate = 0.0; // decay rate, >= 0
    int power = 0;     // 0 or 1
};

/// Sum of exponential terms in t, kept in canonical form: sorted by
/// (rate, power), at most one term per (rate, power) key, exact zero
/// coefficients pruned. Rates arise from integer |k|^2 values, so keys
/// compare exactly.
class TimeProfile {
public:
    TimeProfile() = default;
    static TimeProfile constant(double c);
    static TimeProfile single(double coeff, double rate, int power);

    const std::vector<ProfileTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int max_power() const;

    double eval(double t) const;
    double value_at_zero() const;
    // Largest |coeff| over terms (coarse magnitude used for pruning).
    double max_abs_coeff() const;

    TimeProfile& operator+=(const TimeProfile& o);
    TimeProfile operator+(const TimeProfile& o) const;
    TimeProfile scaled(double a) const;
    // rate += delta on every term (heat semigroup action on one mode)
    TimeProfile rate_shifted(double delta) const;
    // coeff *= factor on every term (fixed-time heat flow)
    TimeProfile coeff_scaled(double factor) const { return scaled(factor); }
    // pointwise product; powers add and must stay <= 1
    TimeProfile times(const TimeProfile& o) const;

    bool operator==(const TimeProfile&) const = default;

private:
    void canonicalize();
    std::vector<ProfileTerm> terms_;
};

enum class Phase { cos, sin };

/// A single vector-valued plane-wave mode
///     (cx(t), cy(t), cz(t)) * phase(k . x).
/// Each component carries its own time profile; a fixed-amplitude mode
/// is the special case of three proportional profiles. This is what
/// makes "merge on (wavevector, phase) collision" exact: colliding
/// modes add componentwise.
struct TrigMode {
    IVec3 k;
    Phase phase = Phase::cos;
    TimeProfile cx, cy, cz;

    double k_sq() const { return k.norm_sq(); }
    Vec3 amplitude(double t) const { return {cx.eval(t), cy.eval(t), cz.eval(t)}; }
    Vec3 amplitude_at_zero() const {
        return {cx.value_at_zero(), cy.value_at_zero(), cz.value_at_zero()};
    }
    double max_abs_coeff() const;
};

/// Finite sum of plane-wave modes with exponential time profiles.
/// Canonical form: modes sorted by (k, phase), wavevectors sign-
/// normalized (first nonzero component positive; the zero wavevector is
/// only legal as a cos "mean" mode), one mode per (k, phase). Two fields
/// are equal iff their canonical forms are identical.
class TrigField {
public:
    TrigField() = default;

    // Add amp * phase(k.x) * profile(t); canonicalizes the sign of k.
    void add_mode(const IVec3& k, Phase phase, const Vec3& amp,
                  const TimeProfile& profile = TimeProfile::constant(1.0));
    void add_mode(TrigMode mode);
    // Merge + sort + prune; add_mode calls are cheap, canonicalize() is
    // called lazily by accessors that need the canonical form.
    void canonicalize() const;

    const std::vector<TrigMode>& modes() const;
    std::size_t mode_count() const { return modes().size(); }
    bool empty() const;

    Vec3 evaluate(const Vec3& x, double t) const;

    TrigField operator+(const TrigField& o) const;
    TrigField operator-(const TrigField& o) const;
    TrigField scaled(double a) const;

    // max |k_axis| over modes, per axis; zero for an axis no mode excites
    std::int64_t max_wavenumber(int axis) const;
    std::int64_t max_wavenumber() const;

    bool has_mean_mode() const;
    // max over modes of |amp(t=argmax coeff)| proxy: largest |coeff|
    double max_abs_coeff() const;

    // max over modes of |k . amp| / (|k| |amp|)-style residual, measured
    // on profile coefficients; 0 for exactly divergence-free fields
    double divergence_residual() const;
    bool is_divergence_free(double tol = 1e-12) const;

    // Field frozen at time t: every profile collapsed to a constant.
    TrigField at_time(double t) const;

    // Drop modes whose largest |coeff| is below rel_tol * (field max).
    TrigField pruned(double rel_tol) const;

    std::string pretty() const;

    bool operator==(const TrigField& o) const;

private:
    mutable std::vector<TrigMode> modes_;
    mutable bool canonical_ = true;
};

std::ostream& operator<<(std::ostream& os, const TrigField& f);

} // namespace nsinf
