#pragma once

#include <string>
#include <vector>

#include "hcbf/sim.hpp"

namespace hcbf::cli {

struct Series {
    std::string label;
    std::string color;
    bool dashed = false;
    std::vector<double> t;
    std::vector<double> value;
};

/// Plan view: obstacle hulls, agent trajectory with fading snapshots, and for
/// moving obstacles concurrent snapshots with matching fade. Accepts one log
/// per mode for overlays.
std::string plan_view_svg(const Scenario& scenario,
                          const std::vector<const TrajectoryLog*>& logs,
                          const std::vector<std::string>& labels);

/// Simple time-series chart with axes and ticks.
std::string timeseries_svg(const std::string& title, const std::string& y_label,
                           const std::vector<Series>& series);

/// Polar comparison of an exact support curve against a fitted one.
std::string support_polar_svg(const std::vector<double>& theta,
                              const std::vector<double>& exact,
                              const std::vector<double>& fitted);

}  // namespace hcbf::cli
