#include "infoplan/behavior_tree.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace infoplan {

using nlohmann::json;

namespace {
constexpr const char* kPlanFormat = "infoplan-bt";
constexpr int kPlanVersion = 1;
} // namespace

std::string to_string(BTNodeType t)
{
    switch (t) {
    case BTNodeType::Root: return "root";
    case BTNodeType::Sequence: return "sequence";
    case BTNodeType::Action: return "action";
    }
    return "?";
}

std::string to_string(ActionType t)
{
    switch (t) {
    case ActionType::MoveTo: return "move_to";
    case ActionType::MoveComplex: return "move_complex";
    case ActionType::MoveAway: return "move_away";
    case ActionType::Grasp: return "grasp";
    case ActionType::Release: return "release";
    }
    return "?";
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Success: return "SUCCESS";
    case Status::Failure: return "FAILURE";
    case Status::Running: return "RUNNING";
    }
    return "?";
}

BTNodeType bt_node_type_from_string(const std::string& s)
{
    for (BTNodeType t : {BTNodeType::Root, BTNodeType::Sequence, BTNodeType::Action}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown node type '" + s + "'");
}

ActionType action_type_from_string(const std::string& s)
{
    for (ActionType t : {ActionType::MoveTo, ActionType::MoveComplex, ActionType::MoveAway, ActionType::Grasp,
                         ActionType::Release}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown action type '" + s + "'");
}

bool BTNode::operator==(const BTNode& o) const
{
    if (transform.has_value() != o.transform.has_value()) {
        return false;
    }
    if (transform && transform->matrix() != o.transform->matrix()) {
        return false;
    }
    return type == o.type && name == o.name && action == o.action && target == o.target && moving == o.moving &&
           members == o.members && custom_pose == o.custom_pose && frames == o.frames && children == o.children;
}

void BTNode::validate() const
{
    auto fail = [this](const std::string& what) {
        throw std::invalid_argument("node '" + name + "': " + what);
    };
    switch (type) {
    case BTNodeType::Root:
        if (children.empty()) {
            fail("root without sequences");
        }
        for (const auto& c : children) {
            if (c.type != BTNodeType::Sequence) {
                fail("root children must be sequences");
            }
            c.validate();
        }
        break;
    case BTNodeType::Sequence:
        if (children.empty()) {
            fail("empty sequence");
        }
        for (const auto& c : children) {
            if (c.type != BTNodeType::Action) {
                fail("sequence children must be actions");
            }
            c.validate();
        }
        break;
    case BTNodeType::Action:
        if (!children.empty()) {
            fail("action with children");
        }
        if (!action) {
            fail("action type missing");
        }
        switch (*action) {
        case ActionType::MoveTo:
            if (!transform || target.empty() || moving.empty()) {
                fail("move_to needs target, moving and transform");
            }
            if (!is_rigid(*transform)) {
                fail("transform is not rigid");
            }
            break;
        case ActionType::MoveAway:
            if (!custom_pose) {
                fail("move_away needs a custom pose");
            }
            break;
        case ActionType::MoveComplex:
        case ActionType::Release:
            if (target.empty()) {
                fail("missing target");
            }
            break;
        case ActionType::Grasp:
            if (target.empty() || members.empty()) {
                fail("grasp needs a target and members");
            }
            break;
        }
        break;
    }
}

std::size_t BTNode::leaf_count() const
{
    if (type == BTNodeType::Action) {
        return 1;
    }
    std::size_t n = 0;
    for (const auto& c : children) {
        n += c.leaf_count();
    }
    return n;
}

BTNode build_bt(const std::vector<ActivityPlan>& activities)
{
    if (activities.empty()) {
        throw std::invalid_argument("cannot build a behavior tree without activities");
    }
    BTNode root;
    root.type = BTNodeType::Root;
    root.name = "root";
    int leaf = 0;
    for (const auto& a : activities) {
        BTNode seq;
        seq.type = BTNodeType::Sequence;
        seq.name = "A" + std::to_string(a.activity + 1);
        seq.frames = std::make_pair(a.first, a.last);
        for (const auto& p : a.primitives) {
            BTNode n;
            n.type = BTNodeType::Action;
            n.name = "P" + std::to_string(++leaf);
            n.target = p.target;
            n.moving = p.moving;
            switch (p.kind) {
            case PrimitiveKind::Move:
                if (p.complex) {
                    n.action = ActionType::MoveComplex;
                    n.frames = p.iu_bounds;
                } else if (p.custom_pose) {
                    n.action = ActionType::MoveAway;
                    n.custom_pose = p.custom_pose;
                } else {
                    n.action = ActionType::MoveTo;
                    n.transform = p.relative;
                }
                break;
            case PrimitiveKind::Grasp:
                n.action = ActionType::Grasp;
                n.members = p.members;
                break;
            case PrimitiveKind::Release:
                n.action = ActionType::Release;
                break;
            }
            seq.children.push_back(std::move(n));
        }
        root.children.push_back(std::move(seq));
    }
    root.validate();
    return root;
}

namespace {

using detail::pose_from;
using detail::pose_json;

json node_json(const BTNode& n)
{
    json j;
    j["type"] = to_string(n.type);
    j["name"] = n.name;
    if (n.action) {
        j["action"] = to_string(*n.action);
    }
    if (!n.target.empty()) {
        j["target"] = n.target;
    }
    if (!n.moving.empty()) {
        j["moving"] = n.moving;
    }
    if (!n.members.empty()) {
        j["members"] = n.members;
    }
    if (n.transform) {
        j["transform"] = to_row_major(*n.transform);
    }
    if (n.custom_pose) {
        j["custom_pose"] = pose_json(*n.custom_pose);
    }
    if (n.frames) {
        j["frames"] = {n.frames->first, n.frames->second};
    }
    if (!n.children.empty()) {
        json kids = json::array();
        for (const auto& c : n.children) {
            kids.push_back(node_json(c));
        }
        j["children"] = std::move(kids);
    }
    return j;
}

BTNode node_from(const json& j)
{
    static const std::vector<std::string> known{"type",      "name",        "action", "target",  "moving",
                                                "members",   "transform",   "custom_pose", "frames", "children"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw std::invalid_argument("unknown plan field '" + key + "'");
        }
    }
    BTNode n;
    n.type = bt_node_type_from_string(j.at("type").get<std::string>());
    n.name = j.at("name").get<std::string>();
    if (j.contains("action")) {
        n.action = action_type_from_string(j.at("action").get<std::string>());
    }
    n.target = j.value("target", std::string());
    n.moving = j.value("moving", std::string());
    if (j.contains("members")) {
        n.members = j.at("members").get<std::vector<std::string>>();
    }
    if (j.contains("transform")) {
        const auto v = j.at("transform").get<std::vector<double>>();
        if (v.size() != 16) {
            throw std::invalid_argument("transform needs 16 values");
        }
        std::array<double, 16> a{};
        std::copy(v.begin(), v.end(), a.begin());
        n.transform = from_row_major(a);
    }
    if (j.contains("custom_pose")) {
        n.custom_pose = pose_from(j.at("custom_pose"));
    }
    if (j.contains("frames")) {
        const auto f = j.at("frames").get<std::vector<Frame>>();
        if (f.size() != 2) {
            throw std::invalid_argument("frames needs two values");
        }
        n.frames = std::make_pair(f[0], f[1]);
    }
    if (j.contains("children")) {
        for (const auto& c : j.at("children")) {
            n.children.push_back(node_from(c));
        }
    }
    return n;
}

} // namespace

std::string serialize_plan(const BTNode& root)
{
    json doc;
    doc["format"] = kPlanFormat;
    doc["version"] = kPlanVersion;
    doc["root"] = node_json(root);
    return doc.dump(2) + "\n";
}

BTNode deserialize_plan(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("plan document is not valid JSON: ") + e.what());
    }
    try {
        if (doc.value("format", std::string()) != kPlanFormat) {
            throw std::invalid_argument("not a plan document");
        }
        if (doc.value("version", 0) != kPlanVersion) {
            throw std::invalid_argument("unsupported plan version");
        }
        BTNode root = node_from(doc.at("root"));
        if (root.type != BTNodeType::Root) {
            throw std::invalid_argument("top-level node must be the root");
        }
        root.validate();
        return root;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("plan schema violation: ") + e.what());
    }
}

BTNode load_plan(const std::string& path)
{
    return deserialize_plan(detail::read_file(path));
}

void save_plan(const std::string& path, const BTNode& root)
{
    detail::write_file(path, serialize_plan(root));
}

std::string to_dot(const BTNode& root)
{
    std::ostringstream out;
    out << "digraph plan {\n  node [fontname=\"Helvetica\"];\n";
    int counter = 0;
    auto visit = [&](auto&& self, const BTNode& n) -> int {
        const int id = counter++;
        std::string label = n.name;
        std::string shape = "box";
        if (n.type == BTNodeType::Sequence) {
            label += "\\n->";
        } else if (n.type == BTNodeType::Action) {
            label = n.name + ": " + to_string(*n.action);
            if (!n.target.empty()) {
                label += "\\n" + n.target;
            }
            shape = "ellipse";
        }
        out << "  n" << id << " [label=\"" << label << "\", shape=" << shape
            << (n.action == ActionType::MoveComplex ? ", style=dashed" : "") << "];\n";
        for (const auto& c : n.children) {
            const int child = self(self, c);
            out << "  n" << id << " -> n" << child << ";\n";
        }
        return id;
    };
    visit(visit, root);
    out << "}\n";
    return out.str();
}

Status BehaviorTreeRunner::tick(ActionExecutor& executor)
{
    return tick_node(root_, executor);
}

Status BehaviorTreeRunner::run(ActionExecutor& executor, int max_ticks)
{
    Status s = Status::Running;
    for (int i = 0; i < max_ticks && s == Status::Running; ++i) {
        s = tick(executor);
    }
    return s;
}

Status BehaviorTreeRunner::tick_node(const BTNode& node, ActionExecutor& executor)
{
    if (node.type == BTNodeType::Action) {
        return executor.execute(node);
    }
    std::size_t& i = cursor_[&node];
    for (; i < node.children.size(); ++i) {
        const Status s = tick_node(node.children[i], executor);
        if (s == Status::Running) {
            return s;
        }
        if (s == Status::Failure) {
            i = 0;
            return s;
        }
    }
    i = 0;
    return Status::Success;
}

std::optional<Pose6D> resolve_target(const BTNode& leaf, const std::map<std::string, Pose6D>& scene,
                                     const std::optional<HomogeneousTransform>& moving_to_effector, bool yaw_only)
{
    if (leaf.action != ActionType::MoveTo || !leaf.transform) {
        throw std::invalid_argument("resolve_target needs a move_to leaf");
    }
    const auto it = scene.find(leaf.target);
    if (it == scene.end()) {
        return std::nullopt;
    }
    HomogeneousTransform target = to_transform(it->second) * *leaf.transform;
    if (moving_to_effector) {
        target = target * *moving_to_effector;
    }
    if (yaw_only) {
        target = project_yaw_only(target);
    }
    return to_pose(target);
}

} // namespace infoplan
