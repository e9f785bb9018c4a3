#pragma once

#include "infoplan/behavior_tree.hpp"
#include "infoplan/scenario.hpp"

#include <map>
#include <string>
#include <vector>

namespace infoplan {

struct WorldState {
    std::map<std::string, Pose6D> objects;
    Pose6D effector;
    /// Held objects and their poses in the effector frame, T^{effector}_{object}.
    std::map<std::string, HomogeneousTransform> attached;

    bool holding(const std::string& id) const { return attached.count(id) != 0; }
};

struct TraceEntry {
    std::string leaf;
    ActionType action = ActionType::MoveTo;
    std::string target;
    Status status = Status::Success;
    Pose6D effector;
    std::string message;
};

struct ExecutionTrace {
    std::vector<TraceEntry> entries;
    Status result = Status::Failure;
};

struct ReplayOptions {
    /// Max distance between the effector and the grasp point for a grasp.
    double grasp_tolerance = 0.02;
    /// Drop roll and pitch from resolved move targets.
    bool yaw_only = false;
};

/// Runs the tree on a copy of `initial`. Moves teleport the effector and carry
/// whatever it holds; grasp attaches the target and its listed members when
/// the target's grasp point is within tolerance; release detaches everything.
std::pair<WorldState, ExecutionTrace> execute_bt(const BTNode& root, const WorldState& initial,
                                                 const ObjectConfig& objects, const ReplayOptions& options = {});

/// Last placement move per held object, read from the tree (a move_to whose
/// moving element is held at that point of the plan).
std::vector<Placement> placements_from_plan(const BTNode& root);

struct PlacementError {
    std::string moving;
    std::string target;
    double position_error = 0.0;
    double yaw_error = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<PlacementError> placements;
    bool pass = false;
};

VerificationReport verify_relative_poses(const WorldState& final_state, const std::vector<Placement>& reference,
                                         double position_tolerance, double yaw_tolerance);

/// {"effector": pose, "objects": {"<id>": pose}}; the effector defaults to
/// the identity pose.
WorldState parse_scene(const std::string& text);
std::string scene_json(const WorldState& state);

std::string trace_json(const ExecutionTrace& trace, const VerificationReport& report);

} // namespace infoplan
