#pragma once

#include "infoplan/primitives.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace infoplan {

enum class BTNodeType { Root, Sequence, Action };
enum class ActionType { MoveTo, MoveComplex, MoveAway, Grasp, Release };
enum class Status { Success, Failure, Running };

std::string to_string(BTNodeType t);
std::string to_string(ActionType t);
std::string to_string(Status s);
BTNodeType bt_node_type_from_string(const std::string& s);
ActionType action_type_from_string(const std::string& s);

struct BTNode {
    BTNodeType type = BTNodeType::Action;
    std::string name;
    std::optional<ActionType> action;
    std::string target;
    std::string moving;
    std::vector<std::string> members;
    /// move_to: T^{target}_{moving}.
    std::optional<HomogeneousTransform> transform;
    /// move_away: world pose of the moving element.
    std::optional<Pose6D> custom_pose;
    /// move_complex: demonstrated IU; sequence: activity bounds.
    std::optional<std::pair<Frame, Frame>> frames;
    std::vector<BTNode> children;

    bool operator==(const BTNode& o) const;

    /// Throws std::invalid_argument when the root/sequence/action layering or
    /// a payload is malformed.
    void validate() const;

    std::size_t leaf_count() const;
};

/// Root with one sequence per activity, leaves in primitive order. Throws on
/// an empty activity list.
BTNode build_bt(const std::vector<ActivityPlan>& activities);

/// Versioned JSON plan document; transforms are 16 row-major values.
std::string serialize_plan(const BTNode& root);
/// Parses and validates a plan document.
BTNode deserialize_plan(const std::string& text);

BTNode load_plan(const std::string& path);
void save_plan(const std::string& path, const BTNode& root);

/// Graphviz description of the tree.
std::string to_dot(const BTNode& root);

class ActionExecutor {
public:
    virtual ~ActionExecutor() = default;
    virtual Status execute(const BTNode& leaf) = 0;
};

/// Ticks the tree with memory: a RUNNING leaf is resumed on the next tick
/// instead of restarting its sequence. The root behaves as a sequence of its
/// sequences.
class BehaviorTreeRunner {
public:
    explicit BehaviorTreeRunner(const BTNode& root) : root_(root) {}

    Status tick(ActionExecutor& executor);
    /// Ticks until the status is no longer RUNNING or `max_ticks` is reached.
    Status run(ActionExecutor& executor, int max_ticks = 1000);

private:
    Status tick_node(const BTNode& node, ActionExecutor& executor);

    const BTNode& root_;
    std::map<const BTNode*, std::size_t> cursor_;
};

/// Effector target of a move_to leaf: T^{world}_{target} * T^{target}_{moving},
/// then * T^{moving}_{effector} when the moving element is a held object.
/// Returns nullopt when the target is missing from `scene`.
std::optional<Pose6D> resolve_target(const BTNode& leaf, const std::map<std::string, Pose6D>& scene,
                                     const std::optional<HomogeneousTransform>& moving_to_effector = std::nullopt,
                                     bool yaw_only = false);

} // namespace infoplan
