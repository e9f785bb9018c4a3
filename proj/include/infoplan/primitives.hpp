#pragma once

#include "infoplan/segmentation.hpp"
#include "infoplan/transform.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace infoplan {

enum class DiffCase { HoStarted, HoEnded, OoStarted, OoEnded };

std::string to_string(DiffCase c);

/// One started or expired edge between adjacent representative graphs, with
/// copies of its endpoint nodes taken from the graph that holds the edge.
struct GraphDiff {
    DiffCase which = DiffCase::HoStarted;
    Node source;
    Node target;
    Relation relation;
    /// Frame of the graph holding the edge.
    Frame frame = 0;
    /// Bounds of the IU that graph represents (filled by activity_diffs).
    std::pair<Frame, Frame> iu{0, 0};
};

/// Edges in `eff` but not `prec` are *_started, edges only in `prec` are
/// *_ended; HO changes come before OO changes and an ended OO before a started
/// one. Either side may be absent (activity boundary). Throws when both graphs
/// exist but target different hand-side nodes.
std::vector<GraphDiff> graph_diff(const std::optional<SceneGraph>& eff, const std::optional<SceneGraph>& prec);

/// Per-object settings used when planning and replaying.
struct ObjectSettings {
    /// Hand-to-effector offset appended to the grasp-approach transform.
    HomogeneousTransform grasp_offset = HomogeneousTransform::Identity();
    /// Point in the object frame the effector must reach before grasping.
    Eigen::Vector3d grasp_point = Eigen::Vector3d::Zero();
    /// World pose to carry the object to when a static OO with it ends.
    std::optional<Pose6D> move_away;

    bool operator==(const ObjectSettings& o) const
    {
        return grasp_offset.matrix() == o.grasp_offset.matrix() && grasp_point == o.grasp_point &&
               move_away == o.move_away;
    }
};

using ObjectConfig = std::map<std::string, ObjectSettings>;

const ObjectSettings& settings_for(const ObjectConfig& config, const std::string& id);

enum class PrimitiveKind { Move, Grasp, Release };

std::string to_string(PrimitiveKind k);

struct Primitive {
    PrimitiveKind kind = PrimitiveKind::Move;
    /// Move: frame to reach. Grasp/release: object held by the effector.
    std::string target;
    /// Move: element whose pose the transform places (hand or held object).
    std::string moving;
    /// Grasp: every object picked up together (unity members, else target).
    std::vector<std::string> members;
    /// Move: T^{target}_{moving}.
    std::optional<HomogeneousTransform> relative;
    bool complex = false;
    std::optional<Pose6D> custom_pose;
    std::optional<std::pair<Frame, Frame>> iu_bounds;

    bool operator==(const Primitive& o) const;
};

/// Diffs of one activity in temporal order, closed by the final ho_ended.
std::vector<GraphDiff> activity_diffs(const Activity& activity);

/// Maps the diffs of one activity to primitives. Throws when a release has no
/// preceding grasp of the same object.
std::vector<Primitive> map_primitives(const Activity& activity, const ObjectConfig& objects);

struct ActivityPlan {
    int activity = 0;
    Frame first = 0;
    Frame last = 0;
    std::vector<Primitive> primitives;

    bool operator==(const ActivityPlan& o) const = default;
};

std::vector<ActivityPlan> plan_activities(const std::vector<Activity>& activities, const ObjectConfig& objects);

} // namespace infoplan
