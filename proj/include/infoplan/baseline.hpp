#pragma once

#include "infoplan/recording.hpp"
#include "infoplan/scene_graph.hpp"

#include <string>
#include <vector>

namespace infoplan {

/// Relative-velocity interaction detector used as a comparison baseline.
/// A frame is flagged when both elements move faster than `motion` and their
/// velocity difference is below `relative` (m/s).
struct VelocityThresholds {
    double motion = 0.05;
    double relative = 0.05;
};

/// Central finite differences over `axes`; the first and last frame are never
/// flagged.
std::vector<bool> velocity_detector(const Recording& recording, const std::string& a, const std::string& b,
                                    const VelocityThresholds& thresholds, const std::vector<Axis>& axes);

/// Frames on which some graph has an HO edge to a node containing `object`.
std::vector<bool> ho_mask(const GraphSequence& graphs, const std::string& object, Frame duration);

std::vector<bool> interval_mask(Frame first, Frame last, Frame duration);

/// Intersection over union of two frame masks (1 when both are empty).
double mask_iou(const std::vector<bool>& a, const std::vector<bool>& b);

struct LabeledRun {
    const Recording* recording = nullptr;
    std::string a;
    std::string b;
    std::vector<bool> truth;
};

/// Grid search for the thresholds maximizing Youden's J (TPR - FPR) pooled
/// over all runs.
VelocityThresholds best_roc_thresholds(const std::vector<LabeledRun>& runs, const std::vector<double>& motion_grid,
                                       const std::vector<double>& relative_grid, const std::vector<Axis>& axes);

} // namespace infoplan
