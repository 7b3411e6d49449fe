#include "nsinf/construction.hpp"

#include "nsinf/errors.hpp"

#include <cmath>
#include <string>

namespace nsinf {

namespace {

// Shell magnitudes are capped so m^2 (and every pairwise sum of two
// squared magnitudes) is exactly representable in int64 and double.
constexpr std::int64_t kMaxMagnitude = std::int64_t(1) << 26;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out) || out > kMaxMagnitude)
        throw ConfigError("shell magnitude overflows the configured integer width (2^26)");
    return out;
}

Shell make_shell(std::int64_t m, const IVec3& eta) {
    Shell s;
    s.k = {m, 0, 0};
    s.k_prime = s.k - eta; // (m, -1, 0)
    // Closed-form resolution of the unit/orthogonality/eta-offset
    // constraints for this lattice realization.
    s.v = {0.0, 0.5, std::sqrt(3.0) / 2.0};
    const double vx = 0.5 / double(m);
    s.v_prime = {vx, 0.5, std::sqrt(0.75 - vx * vx)};
    return s;
}

} // namespace

FrequencyFamily build_frequency_family(std::int64_t K, int r, Preset preset,
                                       std::span<const std::int64_t> magnitudes) {
    if (K < 2) throw ConfigError("build_frequency_family: K must be >= 2");
    if (r < 1) throw ConfigError("build_frequency_family: r must be >= 1");
    if (!magnitudes.empty() && preset != Preset::desk)
        throw ConfigError("explicit shell magnitudes are a desk-preset feature");
    if (!magnitudes.empty() && int(magnitudes.size()) != r)
        throw ConfigError("explicit shell magnitudes: need exactly r entries");

    FrequencyFamily fam;
    fam.eta = {0, 1, 0};
    fam.K = K;
    fam.r = r;
    fam.preset = preset;

    const std::int64_t m1 = checked_mul(2, checked_mul(K, K));
    std::vector<std::int64_t> mags;
    if (!magnitudes.empty()) {
        mags.assign(magnitudes.begin(), magnitudes.end());
        if (mags[0] != m1)
            throw ConfigError("explicit shell magnitudes: m_1 must equal 2K^2 = " +
                              std::to_string(m1));
        for (int s = 1; s < r; ++s) {
            if (mags[s] > kMaxMagnitude)
                throw ConfigError("shell magnitude overflows the configured integer width (2^26)");
            if (mags[s] < 2 * mags[s - 1])
                throw ConfigError("explicit shell magnitudes: need m_s >= 2 m_{s-1}");
        }
    } else {
        mags.push_back(m1);
        // m_s = 2^s K m_{s-1}
        std::int64_t pow2 = 2;
        for (int s = 2; s <= r; ++s) {
            pow2 = checked_mul(pow2, 2);
            mags.push_back(checked_mul(pow2, checked_mul(K, mags.back())));
        }
    }

    for (int s = 0; s < r; ++s) fam.shells.push_back(make_shell(mags[s], fam.eta));
    for (int s = 1; s < r; ++s)
        fam.growth_ratios.push_back(double(mags[s]) / double(mags[s - 1]));

    validate_family(fam);
    return fam;
}

void validate_family(const FrequencyFamily& fam, double tol) {
    if (fam.shells.empty()) throw ConfigError("family has no shells");
    if (fam.eta.norm_sq_i() != 1) throw ConfigError("eta must be a unit lattice vector");
    const IVec3 dir = fam.shells.front().k;
    for (std::size_t s = 0; s < fam.shells.size(); ++s) {
        const Shell& sh = fam.shells[s];
        // parallel to k_1 direction
        if (sh.k.y != 0 || sh.k.z != 0 || sh.k.x <= 0 || dir.y != 0 || dir.z != 0)
            throw ConfigError("shell wavevectors must be parallel to (1,0,0)");
        if (sh.k - sh.k_prime != fam.eta) throw ConfigError("k_s - k_s' != eta");
        const double m = sh.k.norm();
        const double mp = sh.k_prime.norm();
        if (std::abs(sh.k.dot(sh.v)) > tol * m) throw ConfigError("k_s . v_s != 0");
        if (std::abs(sh.k_prime.dot(sh.v_prime)) > tol * mp)
            throw ConfigError("k_s' . v_s' != 0");
        if (std::abs(fam.eta.dot(sh.v) - 0.5) > tol) throw ConfigError("eta . v_s != 1/2");
        if (std::abs(fam.eta.dot(sh.v_prime) - 0.5) > tol)
            throw ConfigError("eta . v_s' != 1/2");
        if (std::abs(sh.v.norm() - 1.0) > tol) throw ConfigError("|v_s| != 1");
        if (std::abs(sh.v_prime.norm() - 1.0) > tol) throw ConfigError("|v_s'| != 1");
        if ((sh.v_prime - sh.v).norm() > 1.0 / double(sh.magnitude()))
            throw ConfigError("|v_s' - v_s| > 1/m_s");
        if (s > 0 && sh.magnitude() < 2 * fam.shells[s - 1].magnitude())
            throw ConfigError("lacunarity floor violated: m_s < 2 m_{s-1}");
    }
    if (fam.shells.front().magnitude() < 2 * fam.K * fam.K)
        throw ConfigError("|k_1| must be >= 2 K^2");
}

InitialData build_initial_data(const FrequencyFamily& fam, double Q) {
    if (Q < 0.0) throw ConfigError("build_initial_data: Q must be >= 0");
    validate_family(fam);

    InitialData data;
    data.family = fam;
    data.Q = Q;

    const double scale = Q / std::sqrt(double(fam.r));
    for (const Shell& sh : fam.shells) {
        // The |k_s| prefactor multiplies both the v_s and the v_s' mode.
        const double a = scale * sh.k.norm();
        data.field.add_mode(sh.k, Phase::cos, sh.v * a);
        data.field.add_mode(sh.k_prime, Phase::cos, sh.v_prime * a);
    }
    data.field.canonicalize();

    if (data.field.has_mean_mode())
        throw NumericalError("initial data acquired a mean mode");
    if (Q > 0.0 && !data.field.is_divergence_free(1e-12))
        throw NumericalError("initial data failed the divergence check");
    return data;
}

} // namespace nsinf
