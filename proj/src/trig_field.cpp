#include "nsinf/trig_field.hpp"

#include "nsinf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <tuple>

namespace nsinf {

// --- TimeProfile ---------------------------------------------------------

TimeProfile TimeProfile::constant(double c) { return single(c, 0.0, 0); }

TimeProfile TimeProfile::single(double coeff, double rate, int power) {
    if (power < 0 || power > 1)
        throw NumericalError("TimeProfile: power must be 0 or 1");
    TimeProfile p;
    if (coeff != 0.0) p.terms_.push_back({coeff, rate, power});
    return p;
}

int TimeProfile::max_power() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.power);
    return m;
}

double TimeProfile::eval(double t) const {
    double s = 0.0;
    for (const auto& term : terms_) {
        double v = term.coeff * std::exp(-term.rate * t);
        if (term.power == 1) v *= t;
        s += v;
    }
    return s;
}

double TimeProfile::value_at_zero() const {
    double s = 0.0;
    for (const auto& term : terms_)
        if (term.power == 0) s += term.coeff;
    return s;
}

double TimeProfile::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& term : terms_) m = std::max(m, std::abs(term.coeff));
    return m;
}

void TimeProfile::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const ProfileTerm& a, const ProfileTerm& b) {
        return std::tie(a.rate, a.power) < std::tie(b.rate, b.power);
    });
    std::vector<ProfileTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!out.empty() && out.back().rate == t.rate && out.back().power == t.power)
            out.back().coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const ProfileTerm& t) { return t.coeff == 0.0; });
    terms_ = std::move(out);
}

TimeProfile& TimeProfile::operator+=(const TimeProfile& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    canonicalize();
    return *this;
}

TimeProfile TimeProfile::operator+(const TimeProfile& o) const {
    TimeProfile r = *this;
    r += o;
    return r;
}

TimeProfile TimeProfile::scaled(double a) const {
    TimeProfile r;
    if (a == 0.0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.coeff *= a;
    std::erase_if(r.terms_, [](const ProfileTerm& t) { return t.coeff == 0.0; });
    return r;
}

TimeProfile TimeProfile::rate_shifted(double delta) const {
    TimeProfile r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.rate += delta;
    r.canonicalize();
    return r;
}

TimeProfile TimeProfile::times(const TimeProfile& o) const {
    TimeProfile r;
    r.terms_.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            const int p = a.power + b.power;
            if (p > 1)
                throw NumericalError(
                    "TimeProfile::times: product power exceeds 1 "
                    "(beyond first-iterate scope)");
            r.terms_.push_back({a.coeff * b.coeff, a.rate + b.rate, p});
        }
    r.canonicalize();
    return r;
}

// --- TrigMode / TrigField ------------------------------------------------

double TrigMode::max_abs_coeff() const {
    return std::max({cx.max_abs_coeff(), cy.max_abs_coeff(), cz.max_abs_coeff()});
}

namespace {

// Sign-normalize the wavevector: cos is even, sin is odd.
void normalize_sign(TrigMode& m) {
    if (m.k.is_zero()) {
        if (m.phase == Phase::sin) {
            // sin(0) == 0
            m.cx = m.cy = m.cz = TimeProfile{};
        }
        return;
    }
    if (!m.k.lex_positive()) {
        m.k = -m.k;
        if (m.phase == Phase::sin) {
            m.cx = m.cx.scaled(-1.0);
            m.cy = m.cy.scaled(-1.0);
            m.cz = m.cz.scaled(-1.0);
        }
    }
}

bool mode_key_less(const TrigMode& a, const TrigMode& b) {
    if (a.k != b.k) return a.k < b.k;
    return int(a.phase) < int(b.phase);
}

} // namespace

void TrigField::add_mode(const IVec3& k, Phase phase, const Vec3& amp,
                         const TimeProfile& profile) {
    TrigMode m;
    m.k = k;
    m.phase = phase;
    m.cx = profile.scaled(amp.x);
    m.cy = profile.scaled(amp.y);
    m.cz = profile.scaled(amp.z);
    add_mode(std::move(m));
}

void TrigField::add_mode(TrigMode mode) {
    normalize_sign(mode);
    if (mode.cx.empty() && mode.cy.empty() && mode.cz.empty()) return;
    modes_.push_back(std::move(mode));
    canonical_ = false;
}

void TrigField::canonicalize() const {
    if (canonical_) return;
    std::sort(modes_.begin(), modes_.end(), mode_key_less);
    std::vector<TrigMode> out;
    out.reserve(modes_.size());
    for (auto& m : modes_) {
        if (!out.empty() && out.back().k == m.k && out.back().phase == m.phase) {
            out.back().cx += m.cx;
            out.back().cy += m.cy;
            out.back().cz += m.cz;
        } else {
            out.push_back(std::move(m));
        }
    }
    std::erase_if(out, [](const TrigMode& m) {
        return m.cx.empty() && m.cy.empty() && m.cz.empty();
    });
    modes_ = std::move(out);
    canonical_ = true;
}

const std::vector<TrigMode>& TrigField::modes() const {
    canonicalize();
    return modes_;
}

bool TrigField::empty() const { return modes().empty(); }

Vec3 TrigField::evaluate(const Vec3& x, double t) const {
    Vec3 s;
    for (const auto& m : modes()) {
        const double arg = double(m.k.x) * x.x + double(m.k.y) * x.y + double(m.k.z) * x.z;
        const double w = (m.phase == Phase::cos) ? std::cos(arg) : std::sin(arg);
        s.x += w * m.cx.eval(t);
        s.y += w * m.cy.eval(t);
        s.z += w * m.cz.eval(t);
    }
    return s;
}

TrigField TrigField::operator+(const TrigField& o) const {
    TrigField r = *this;
    for (const auto& m : o.modes()) r.add_mode(m);
    r.canonicalize();
    return r;
}

TrigField TrigField::operator-(const TrigField& o) const { return *this + o.scaled(-1.0); }

TrigField TrigField::scaled(double a) const {
    TrigField r;
    for (const auto& m : modes()) {
        TrigMode s = m;
        s.cx = s.cx.scaled(a);
        s.cy = s.cy.scaled(a);
        s.cz = s.cz.scaled(a);
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

std::int64_t TrigField::max_wavenumber(int axis) const {
    std::int64_t m = 0;
    for (const auto& mode : modes()) m = std::max(m, std::abs(mode.k[axis]));
    return m;
}

std::int64_t TrigField::max_wavenumber() const {
    return std::max({max_wavenumber(0), max_wavenumber(1), max_wavenumber(2)});
}

bool TrigField::has_mean_mode() const {
    for (const auto& m : modes())
        if (m.k.is_zero()) return true;
    return false;
}

double TrigField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& mode : modes()) m = std::max(m, mode.max_abs_coeff());
    return m;
}

double TrigField::divergence_residual() const {
    // k . c(t) must vanish identically: accumulate the termwise profile
    // k_x cx + k_y cy + k_z cz and report its largest coefficient,
    // normalized by |k| * (largest amplitude coefficient).
    double worst = 0.0;
    for (const auto& m : modes()) {
        if (m.k.is_zero()) continue;
        TimeProfile div = m.cx.scaled(double(m.k.x));
        div += m.cy.scaled(double(m.k.y));
        div += m.cz.scaled(double(m.k.z));
        const double scale = m.k.norm() * std::max(m.max_abs_coeff(), 1e-300);
        worst = std::max(worst, div.max_abs_coeff() / scale);
    }
    return worst;
}

bool TrigField::is_divergence_free(double tol) const { return divergence_residual() <= tol; }

TrigField TrigField::at_time(double t) const {
    TrigField r;
    for (const auto& m : modes()) {
        TrigMode s;
        s.k = m.k;
        s.phase = m.phase;
        s.cx = TimeProfile::constant(m.cx.eval(t));
        s.cy = TimeProfile::constant(m.cy.eval(t));
        s.cz = TimeProfile::constant(m.cz.eval(t));
        r.add_mode(std::move(s));
    }
    r.canonicalize();
    return r;
}

TrigField TrigField::pruned(double rel_tol) const {
    const double cutoff = rel_tol * max_abs_coeff();
    TrigField r;
    for (const auto& m : modes())
        if (m.max_abs_coeff() > cutoff) r.add_mode(m);
    r.canonicalize();
    return r;
}

bool TrigField::operator==(const TrigField& o) const {
    canonicalize();
    o.canonicalize();
    if (modes_.size() != o.modes_.size()) return false;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const auto& a = modes_[i];
        const auto& b = o.modes_[i];
        if (a.k != b.k || a.phase != b.phase) return false;
        if (a.cx != b.cx || a.cy != b.cy || a.cz != b.cz) return false;
    }
    return true;
}

namespace {

void print_profile(std::ostream& os, const TimeProfile& p) {
    if (p.empty()) {
        os << "0";
        return;
    }
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << (t.coeff >= 0 ? " + " : " - ");
        else if (t.coeff < 0) os << "-";
        os << std::abs(t.coeff);
        if (t.power == 1) os << " t";
        if (t.rate != 0.0) os << " e^(-" << t.rate << " t)";
        first = false;
    }
}

} // namespace

std::string TrigField::pretty() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const TrigField& f) {
    if (f.empty()) return os << "0\n";
    for (const auto& m : f.modes()) {
        os << (m.phase == Phase::cos ? "cos" : "sin") << "((" << m.k.x << "," << m.k.y
           << "," << m.k.z << ").x) * [";
        print_profile(os, m.cx);
        os << " ; ";
        print_profile(os, m.cy);
        os << " ; ";
        print_profile(os, m.cz);
        os << "]\n";
    }
    return os;
}

} // namespace nsinf
