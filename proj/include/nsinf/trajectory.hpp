#pragma once

#include "nsinf/grid_field.hpp"
#include "nsinf/trig_field.hpp"

#include <variant>
#include <vector>

namespace nsinf {

enum class TrajectorySource { exact, solver };

/// Time-indexed snapshots feeding the trajectory norms. Exact snapshots
/// are trig fields frozen at their time; solver snapshots are grid
/// fields (or trig fields when the spectrum compressed losslessly).
struct Trajectory {
    std::vector<double> times;
    std::vector<std::variant<TrigField, GridField>> snaps;
    TrajectorySource source = TrajectorySource::exact;

    std::size_t size() const { return times.size(); }

    /// Freeze a (possibly time-profiled) trig field at each time.
    static Trajectory from_field(const TrigField& f, std::vector<double> times);
};

/// Log-spaced times covering [t_min, t_max], at least points_per_decade
/// per decade, endpoints included.
std::vector<double> log_schedule(double t_min, double t_max, int points_per_decade);

} // namespace nsinf
