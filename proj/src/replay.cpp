#include "infoplan/replay.hpp"

#include "json_util.hpp"

#include <set>

namespace infoplan {

using nlohmann::json;

namespace {

class KinematicExecutor : public ActionExecutor {
public:
    KinematicExecutor(WorldState& state, const ObjectConfig& objects, const ReplayOptions& options,
                      ExecutionTrace& trace)
        : state_(state), objects_(objects), options_(options), trace_(trace)
    {
    }

    Status execute(const BTNode& leaf) override
    {
        std::string message;
        const Status s = run(leaf, message);
        trace_.entries.push_back(TraceEntry{leaf.name, *leaf.action, leaf.target, s, state_.effector, message});
        return s;
    }

private:
    void move_effector(const HomogeneousTransform& target)
    {
        state_.effector = to_pose(target);
        for (const auto& [id, offset] : state_.attached) {
            state_.objects[id] = to_pose(target * offset);
        }
    }

    Status run(const BTNode& leaf, std::string& message)
    {
        switch (*leaf.action) {
        case ActionType::MoveTo: {
            std::optional<HomogeneousTransform> to_effector;
            if (state_.holding(leaf.moving)) {
                to_effector = state_.attached.at(leaf.moving).inverse(Eigen::Isometry);
            } else if (state_.objects.count(leaf.moving) != 0) {
                message = "moving element '" + leaf.moving + "' is not held";
                return Status::Failure;
            }
            const auto target = resolve_target(leaf, state_.objects, to_effector, options_.yaw_only);
            if (!target) {
                message = "target '" + leaf.target + "' not in scene";
                return Status::Failure;
            }
            move_effector(to_transform(*target));
            return Status::Success;
        }
        case ActionType::MoveAway: {
            HomogeneousTransform target = to_transform(*leaf.custom_pose);
            if (state_.holding(leaf.moving)) {
                target = target * state_.attached.at(leaf.moving).inverse(Eigen::Isometry);
            }
            move_effector(target);
            return Status::Success;
        }
        case ActionType::MoveComplex:
            message = "complex motion placeholder";
            return Status::Success;
        case ActionType::Grasp: {
            const auto it = state_.objects.find(leaf.target);
            if (it == state_.objects.end()) {
                message = "target '" + leaf.target + "' not in scene";
                return Status::Failure;
            }
            const Eigen::Vector3d point = to_transform(it->second) * settings_for(objects_, leaf.target).grasp_point;
            const double gap = (point - state_.effector.position).norm();
            if (gap > options_.grasp_tolerance) {
                message = "grasp point " + std::to_string(gap) + " m from the effector";
                return Status::Failure;
            }
            const HomogeneousTransform inv = to_transform(state_.effector).inverse(Eigen::Isometry);
            for (const auto& m : leaf.members) {
                if (const auto mt = state_.objects.find(m); mt != state_.objects.end()) {
                    state_.attached[m] = inv * to_transform(mt->second);
                }
            }
            state_.attached[leaf.target] = inv * to_transform(it->second);
            return Status::Success;
        }
        case ActionType::Release:
            if (!state_.holding(leaf.target)) {
                message = "'" + leaf.target + "' is not held";
                return Status::Failure;
            }
            state_.attached.clear();
            return Status::Success;
        }
        return Status::Failure;
    }

    WorldState& state_;
    const ObjectConfig& objects_;
    const ReplayOptions& options_;
    ExecutionTrace& trace_;
};

} // namespace

std::pair<WorldState, ExecutionTrace> execute_bt(const BTNode& root, const WorldState& initial,
                                                 const ObjectConfig& objects, const ReplayOptions& options)
{
    WorldState state = initial;
    ExecutionTrace trace;
    KinematicExecutor executor(state, objects, options, trace);
    BehaviorTreeRunner runner(root);
    trace.result = runner.run(executor);
    return {state, trace};
}

std::vector<Placement> placements_from_plan(const BTNode& root)
{
    std::map<std::string, Placement> last;
    std::set<std::string> held;
    for (const auto& seq : root.children) {
        for (const auto& leaf : seq.children) {
            switch (*leaf.action) {
            case ActionType::Grasp:
                held.insert(leaf.target);
                held.insert(leaf.members.begin(), leaf.members.end());
                break;
            case ActionType::Release:
                held.clear();
                break;
            case ActionType::MoveTo:
                if (held.count(leaf.moving) != 0) {
                    last[leaf.moving] = Placement{leaf.moving, leaf.target, *leaf.transform};
                }
                break;
            default:
                break;
            }
        }
    }
    std::vector<Placement> out;
    for (auto& [id, p] : last) {
        out.push_back(p);
    }
    return out;
}

VerificationReport verify_relative_poses(const WorldState& final_state, const std::vector<Placement>& reference,
                                         double position_tolerance, double yaw_tolerance)
{
    VerificationReport report;
    report.pass = true;
    for (const auto& ref : reference) {
        PlacementError e;
        e.moving = ref.moving;
        e.target = ref.target;
        const auto m = final_state.objects.find(ref.moving);
        const auto t = final_state.objects.find(ref.target);
        if (m == final_state.objects.end() || t == final_state.objects.end()) {
            e.position_error = std::numeric_limits<double>::infinity();
            e.yaw_error = std::numeric_limits<double>::infinity();
        } else {
            const HomogeneousTransform achieved = relative_transform(t->second, m->second);
            e.position_error = (achieved.translation() - ref.relative.translation()).norm();
            e.yaw_error = angle_distance(yaw_of(achieved), yaw_of(ref.relative));
        }
        e.pass = e.position_error <= position_tolerance && e.yaw_error <= yaw_tolerance;
        report.pass = report.pass && e.pass;
        report.placements.push_back(e);
    }
    return report;
}

WorldState parse_scene(const std::string& text)
{
    WorldState s;
    try {
        const json doc = json::parse(text);
        if (doc.contains("effector")) {
            s.effector = detail::pose_from(doc.at("effector"));
        }
        for (const auto& [id, p] : doc.at("objects").items()) {
            s.objects[id] = detail::pose_from(p);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scene document: ") + e.what());
    }
    return s;
}

std::string scene_json(const WorldState& state)
{
    json doc;
    doc["effector"] = detail::pose_json(state.effector);
    doc["objects"] = json::object();
    for (const auto& [id, p] : state.objects) {
        doc["objects"][id] = detail::pose_json(p);
    }
    return doc.dump(2) + "\n";
}

std::string trace_json(const ExecutionTrace& trace, const VerificationReport& report)
{
    json doc;
    doc["result"] = to_string(trace.result);
    doc["trace"] = json::array();
    for (const auto& e : trace.entries) {
        json j;
        j["leaf"] = e.leaf;
        j["action"] = to_string(e.action);
        j["target"] = e.target;
        j["status"] = to_string(e.status);
        j["effector"] = detail::pose_json(e.effector);
        if (!e.message.empty()) {
            j["message"] = e.message;
        }
        doc["trace"].push_back(std::move(j));
    }
    doc["verification"]["pass"] = report.pass;
    doc["verification"]["placements"] = json::array();
    for (const auto& p : report.placements) {
        json j;
        j["moving"] = p.moving;
        j["target"] = p.target;
        j["position_error"] = p.position_error;
        j["yaw_error"] = p.yaw_error;
        j["pass"] = p.pass;
        doc["verification"]["placements"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

} // namespace infoplan
