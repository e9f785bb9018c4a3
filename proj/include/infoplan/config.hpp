#pragma once

#include "infoplan/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infoplan {

/// Every tunable of the pipeline. Defaults reproduce the desk-scale setup:
/// 30 Hz, 40-sample window, 1 cm bins, 0.05 bit MI floor, 0.15/0.2 m gates.
struct PipelineConfig {
    double sample_rate = 30.0;
    int window_samples = 40;
    double quantization = 0.01;
    double mi_epsilon = 0.05;
    double d_ho_threshold = 0.15;
    double d_oo_threshold = 0.2;
    int trend_horizon = 20;
    std::vector<Axis> axes{Axis::X, Axis::Y};
    double angle_threshold_deg = 45.0;
    int max_gap_frames = 5;

    // Segmentation / planning knobs.
    double complexity_tolerance = 0.01;
    bool filter_temporary = true;

    int half_window() const { return window_samples / 2; }

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Converts a window length in seconds to an even sample count
/// (round to nearest, then up to the next even number).
int window_samples_from_seconds(double seconds, double sample_rate);

std::string axes_to_string(const std::vector<Axis>& axes);
std::vector<Axis> axes_from_string(const std::string& text);

/// Parses the `key = value` config format (see docs/formats.md). Unknown keys
/// are rejected. When both `window_samples` and `window_seconds` are present,
/// samples win. `trend_horizon` defaults to half the window when absent.
PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::string& path);

/// Applies `overrides` (same keys as the file format) on top of `base`.
PipelineConfig apply_overrides(PipelineConfig base, const std::map<std::string, std::string>& overrides);

std::string serialize_config(const PipelineConfig& config);

} // namespace infoplan
