#include "nsinf/trajectory.hpp"

#include "nsinf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nsinf {

Trajectory Trajectory::from_field(const TrigField& f, std::vector<double> times) {
    if (!std::is_sorted(times.begin(), times.end()))
        throw ConfigError("Trajectory: times must be increasing");
    Trajectory t;
    t.source = TrajectorySource::exact;
    for (double s : times) t.snaps.emplace_back(f.at_time(s));
    t.times = std::move(times);
    return t;
}

std::vector<double> log_schedule(double t_min, double t_max, int points_per_decade) {
    if (!(t_min > 0.0) || t_max <= t_min)
        throw ConfigError("log_schedule: need 0 < t_min < t_max");
    const double decades = std::log10(t_max / t_min);
    const int n = std::max(2, int(std::ceil(decades * points_per_decade)) + 1);
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double f = double(i) / double(n - 1);
        out.push_back(t_min * std::pow(t_max / t_min, f));
    }
    out.back() = t_max;
    return out;
}

} // namespace nsinf
