#pragma once

#include "nsinf/trig_field.hpp"
#include "nsinf/vec3.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace nsinf {

enum class Preset { paper, desk };

struct Shell {
    IVec3 k;       // (m_s, 0, 0)
    IVec3 k_prime; // k - eta
    Vec3 v;        // unit, k.v = 0, eta.v = 1/2
    Vec3 v_prime;  // unit, k'.v' = 0, eta.v' = 1/2
    std::int64_t magnitude() const { return k.x; }
};

/// The lacunary frequency scaffold. All shells share the k0 direction
/// (1,0,0); eta = (0,1,0) is the transverse unit lattice vector; shell
/// magnitudes grow by a factor >= 2.
struct FrequencyFamily {
    IVec3 eta{0, 1, 0};
    std::int64_t K = 0; // |k0| scale
    int r = 0;
    Preset preset = Preset::desk;
    std::vector<Shell> shells;
    std::vector<double> growth_ratios; // |k_s| / |k_{s-1}|, r-1 entries

    std::int64_t magnitude(int s) const { return shells.at(s).magnitude(); }
};

/// Builds the family. preset == desk accepts explicit shell magnitudes
/// (ratio >= 2, m_1 = 2K^2 enforced); with no explicit magnitudes both
/// presets use the doubling rule m_s = 2^s K m_{s-1}. Magnitudes above
/// 2^26 are rejected so |k|^2 stays exact in int64 and double.
FrequencyFamily build_frequency_family(std::int64_t K, int r, Preset preset,
                                       std::span<const std::int64_t> magnitudes = {});

/// Throws ConfigError when any family invariant fails (orthogonality,
/// eta-offsets, unit lengths, lacunarity, |k1| >= 2K^2).
void validate_family(const FrequencyFamily& fam, double tol = 1e-12);

struct InitialData {
    FrequencyFamily family;
    double Q = 0.0;
    TrigField field; // (Q/sqrt r) sum_s |k_s| [v_s cos(k_s.x) + v_s' cos(k_s'.x)]
};

InitialData build_initial_data(const FrequencyFamily& fam, double Q);

} // namespace nsinf
