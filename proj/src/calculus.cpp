#include "nsinf/calculus.hpp"

#include "nsinf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace nsinf {

TrigField heat_flow(const TrigField& f) {
    TrigField r;
    for (const auto& m : f.modes()) {
        TrigMode s = m;
        const double ksq = m.k_sq();
        s.cx = s.cx.rate_shifted(ksq);
        s.cy = s.cy.rate_shifted(ksq);
        s.cz = s.cz.rate_shifted(ksq);
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

TrigField heat_flow_fixed(const TrigField& f, double t0) {
    TrigField r;
    for (const auto& m : f.modes()) {
        TrigMode s = m;
        const double damp = std::exp(-m.k_sq() * t0);
        s.cx = s.cx.scaled(damp);
        s.cy = s.cy.scaled(damp);
        s.cz = s.cz.scaled(damp);
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

namespace {

// Trig product tables. cos A cos B = 1/2 cos(A-B) + 1/2 cos(A+B), etc.
// Entries: phase of the (A-B) term / its sign, phase of the (A+B) term /
// its sign, with the 1/2 factor applied by the caller.
struct ProductRule {
    Phase diff_phase;
    double diff_sign;
    Phase sum_phase;
    double sum_sign;
};

ProductRule product_rule(Phase a, Phase b) {
    if (a == Phase::cos && b == Phase::cos) return {Phase::cos, 1.0, Phase::cos, 1.0};
    if (a == Phase::sin && b == Phase::sin) return {Phase::cos, 1.0, Phase::cos, -1.0};
    if (a == Phase::cos && b == Phase::sin) return {Phase::sin, -1.0, Phase::sin, 1.0};
    // sin A cos B
    return {Phase::sin, 1.0, Phase::sin, 1.0};
}

} // namespace

TrigField advect(const TrigField& u, const TrigField& w, std::size_t mode_budget) {
    if (!u.is_divergence_free(1e-10))
        throw NumericalError("advect: u must be divergence-free");
    const std::size_t bound = 4 * u.mode_count() * w.mode_count();
    if (bound > mode_budget)
        throw BudgetError("advect: mode budget exceeded (" + std::to_string(bound) +
                          " > " + std::to_string(mode_budget) + ")");

    TrigField out;
    for (const auto& mu : u.modes()) {
        for (const auto& mw : w.modes()) {
            // (u . grad) w from this pair:
            //   sum_j u^j d_j w =
            //   [l . (cx,cy,cz)_u](t) * c_w(t) * phase_u(k.x) * D phase_w(l.x)
            // where D cos = -sin and D sin = +cos (the l_j factor is folded
            // into the profile dot product).
            const IVec3 l = mw.k;
            TimeProfile lscale = mu.cx.scaled(double(l.x));
            lscale += mu.cy.scaled(double(l.y));
            lscale += mu.cz.scaled(double(l.z));
            if (lscale.empty()) continue;

            const Phase dphase = (mw.phase == Phase::cos) ? Phase::sin : Phase::cos;
            const double dsign = (mw.phase == Phase::cos) ? -1.0 : 1.0;

            const ProductRule rule = product_rule(mu.phase, dphase);
            // component profiles of the product, shared trig structure
            TimeProfile px = lscale.times(mw.cx);
            TimeProfile py = lscale.times(mw.cy);
            TimeProfile pz = lscale.times(mw.cz);

            const auto emit = [&](const IVec3& k, Phase ph, double sgn) {
                TrigMode m;
                m.k = k;
                m.phase = ph;
                const double c = 0.5 * dsign * sgn;
                m.cx = px.scaled(c);
                m.cy = py.scaled(c);
                m.cz = pz.scaled(c);
                out.add_mode(std::move(m));
            };
            emit(mu.k - l, rule.diff_phase, rule.diff_sign);
            emit(mu.k + l, rule.sum_phase, rule.sum_sign);
        }
    }
    out.canonicalize();
    return out;
}

TrigField leray_project(const TrigField& f) {
    TrigField r;
    for (const auto& m : f.modes()) {
        if (m.k.is_zero()) {
            r.add_mode(m);
            continue;
        }
        const Vec3 khat = m.k.to_vec3() * (1.0 / m.k.norm());
        TrigMode s = m;
        // c -> c - (khat . c) khat, componentwise on the profiles
        TimeProfile kdotc = m.cx.scaled(khat.x);
        kdotc += m.cy.scaled(khat.y);
        kdotc += m.cz.scaled(khat.z);
        s.cx = m.cx + kdotc.scaled(-khat.x);
        s.cy = m.cy + kdotc.scaled(-khat.y);
        s.cz = m.cz + kdotc.scaled(-khat.z);
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

namespace {

TimeProfile duhamel_profile(const TimeProfile& p, double mu, DuhamelInfo* info,
                            double eps_res) {
    TimeProfile out;
    for (const auto& term : p.terms()) {
        if (term.power != 0)
            throw NumericalError(
                "duhamel_integrate: t*exp profile terms are beyond first-iterate scope");
        const double lambda = term.rate;
        const double gap = std::abs(mu - lambda);
        if (gap <= eps_res * std::max({mu, lambda, 1.0})) {
            // resonant branch: c t e^{-mu t}
            out += TimeProfile::single(term.coeff, mu, 1);
            if (info) {
                if (gap == 0.0) {
                    info->resonant_terms++;
                } else {
                    info->near_resonant_terms++;
                    info->max_near_resonance_gap =
                        std::max(info->max_near_resonance_gap, gap);
                }
            }
        } else {
            const double c = term.coeff / (mu - lambda);
            out += TimeProfile::single(c, lambda, 0);
            out += TimeProfile::single(-c, mu, 0);
        }
    }
    return out;
}

} // namespace

TrigField duhamel_integrate(const TrigField& f, DuhamelInfo* info, double eps_res) {
    TrigField r;
    for (const auto& m : f.modes()) {
        const double mu = m.k_sq();
        TrigMode s;
        s.k = m.k;
        s.phase = m.phase;
        s.cx = duhamel_profile(m.cx, mu, info, eps_res);
        s.cy = duhamel_profile(m.cy, mu, info, eps_res);
        s.cz = duhamel_profile(m.cz, mu, info, eps_res);
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

namespace {

IVec3 canonical(const IVec3& k) { return k.lex_positive() ? k : -k; }

} // namespace

FirstIterate first_iterate(const InitialData& u0) {
    const TrigField flowed = heat_flow(u0.field);
    const TrigField prod = advect(flowed, flowed);

    std::set<IVec3> sum_keys;
    for (const Shell& sh : u0.family.shells) sum_keys.insert(canonical(sh.k + sh.k_prime));
    const IVec3 eta_key = canonical(u0.family.eta);
    if (sum_keys.contains(eta_key))
        throw NumericalError("first_iterate: eta collides with a same-shell sum frequency");

    FirstIterate out;
    for (const auto& m : prod.modes()) {
        if (m.k.is_zero())
            throw NumericalError("first_iterate: advection produced a mean mode");
        if (m.k == eta_key)
            out.n1.add_mode(m);
        else if (sum_keys.contains(m.k))
            out.n2.add_mode(m);
        else
            out.n3.add_mode(m);
    }
    out.n1.canonicalize();
    out.n2.canonicalize();
    out.n3.canonicalize();
    out.u1 = duhamel_integrate(leray_project(prod));
    return out;
}

SplitU1 split_u1(const TrigField& u1, const FrequencyFamily& fam) {
    const IVec3 eta_key = canonical(fam.eta);
    SplitU1 out;
    for (const auto& m : u1.modes()) {
        if (m.k == eta_key)
            out.u10.add_mode(m);
        else
            out.u11.add_mode(m);
    }
    out.u10.canonicalize();
    out.u11.canonicalize();
    return out;
}

} // namespace nsinf
