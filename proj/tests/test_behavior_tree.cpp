#include "infoplan/behavior_tree.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <deque>

using namespace infoplan;

namespace {

HomogeneousTransform xyz_yaw(double x, double y, double z, double yaw)
{
    return to_transform(Pose6D::from_xyz_yaw(x, y, z, yaw));
}

std::vector<ActivityPlan> two_activities()
{
    Primitive reach{PrimitiveKind::Move, "cup", "hand", {}, xyz_yaw(0.03, 0, 0.05, 0.1)};
    Primitive grasp{PrimitiveKind::Grasp, "cup", "", {"cup"}};
    Primitive place{PrimitiveKind::Move, "plate", "cup", {}, xyz_yaw(0, 0, 0.01, -0.4)};
    Primitive scan{PrimitiveKind::Move, "cup", "cup", {}, std::nullopt, true, std::nullopt, std::make_pair(10, 40)};
    Primitive away{PrimitiveKind::Move, "", "cup", {}, std::nullopt, false, Pose6D::from_xyz_yaw(0.5, 0.5, 0.2, 0)};
    Primitive release{PrimitiveKind::Release, "cup"};
    return {ActivityPlan{0, 5, 60, {reach, grasp, place, scan, release}},
            ActivityPlan{1, 80, 120, {reach, grasp, away, release}}};
}

// Scripted executor: pops statuses per leaf name, SUCCESS when none is queued.
class Scripted : public ActionExecutor {
public:
    std::map<std::string, std::deque<Status>> script;
    std::vector<std::string> calls;

    Status execute(const BTNode& leaf) override
    {
        calls.push_back(leaf.name);
        auto& q = script[leaf.name];
        if (q.empty()) {
            return Status::Success;
        }
        const Status s = q.front();
        q.pop_front();
        return s;
    }
};

} // namespace

TEST(BehaviorTree, BuildsOneSequencePerActivity)
{
    const auto root = build_bt(two_activities());
    EXPECT_EQ(root.type, BTNodeType::Root);
    ASSERT_EQ(root.children.size(), 2u);
    EXPECT_EQ(root.children[0].name, "A1");
    EXPECT_EQ(root.children[1].name, "A2");
    EXPECT_EQ(root.children[0].frames, std::make_pair(Frame(5), Frame(60)));
    EXPECT_EQ(root.leaf_count(), 9u);
    const auto& a1 = root.children[0].children;
    EXPECT_EQ(a1[0].name, "P1");
    EXPECT_EQ(a1[0].action, ActionType::MoveTo);
    EXPECT_EQ(a1[1].action, ActionType::Grasp);
    EXPECT_EQ(a1[3].action, ActionType::MoveComplex);
    EXPECT_EQ(a1[3].frames, std::make_pair(Frame(10), Frame(40)));
    EXPECT_EQ(a1[4].action, ActionType::Release);
    EXPECT_EQ(root.children[1].children[0].name, "P6");
    EXPECT_EQ(root.children[1].children[2].action, ActionType::MoveAway);
    EXPECT_THROW(build_bt({}), std::invalid_argument);
}

TEST(BehaviorTree, DocumentRoundTripsExactly)
{
    const auto root = build_bt(two_activities());
    const auto text = serialize_plan(root);
    const auto back = deserialize_plan(text);
    EXPECT_EQ(back, root);
    EXPECT_EQ(serialize_plan(back), text);
    const auto doc = nlohmann::json::parse(text);
    EXPECT_EQ(doc.at("format"), "infoplan-bt");
    EXPECT_EQ(doc.at("version"), 1);
    EXPECT_EQ(doc.at("root").at("children")[0].at("children")[0].at("transform").size(), 16u);
}

TEST(BehaviorTree, RejectsMalformedDocuments)
{
    const auto text = serialize_plan(build_bt(two_activities()));
    auto edit = [&](auto f) {
        auto doc = nlohmann::json::parse(text);
        f(doc);
        return doc.dump();
    };
    EXPECT_THROW(deserialize_plan("{"), std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) { d["format"] = "other"; })), std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) { d["version"] = 2; })), std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) { d["root"]["color"] = "red"; })), std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) { d["root"]["type"] = "sequence"; })), std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) {
                     d["root"]["children"][0]["children"][0]["transform"] = std::vector<double>(15, 0.0);
                 })),
                 std::invalid_argument);
    EXPECT_THROW(deserialize_plan(edit([](auto& d) {
                     d["root"]["children"][0]["children"][0]["action"] = "jump";
                 })),
                 std::invalid_argument);
    // Sequence nested under a sequence.
    EXPECT_THROW(deserialize_plan(edit([](auto& d) {
                     d["root"]["children"][0]["children"].push_back(d["root"]["children"][1]);
                 })),
                 std::invalid_argument);
    // move_to without its transform.
    EXPECT_THROW(deserialize_plan(edit([](auto& d) {
                     d["root"]["children"][0]["children"][0].erase("transform");
                 })),
                 std::invalid_argument);
}

TEST(BehaviorTree, RunnerTicksLeavesInOrder)
{
    const auto root = build_bt(two_activities());
    Scripted ex;
    BehaviorTreeRunner runner(root);
    EXPECT_EQ(runner.run(ex), Status::Success);
    EXPECT_EQ(ex.calls, (std::vector<std::string>{"P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9"}));
}

TEST(BehaviorTree, RunningLeafResumesWithoutReplay)
{
    const auto root = build_bt(two_activities());
    Scripted ex;
    ex.script["P3"] = {Status::Running, Status::Running};
    BehaviorTreeRunner runner(root);
    EXPECT_EQ(runner.tick(ex), Status::Running);
    EXPECT_EQ(runner.tick(ex), Status::Running);
    EXPECT_EQ(runner.tick(ex), Status::Success);
    EXPECT_EQ(ex.calls, (std::vector<std::string>{"P1", "P2", "P3", "P3", "P3", "P4", "P5", "P6", "P7", "P8", "P9"}));
}

TEST(BehaviorTree, FailureStopsTheSequence)
{
    const auto root = build_bt(two_activities());
    Scripted ex;
    ex.script["P7"] = {Status::Failure};
    BehaviorTreeRunner runner(root);
    EXPECT_EQ(runner.run(ex), Status::Failure);
    EXPECT_EQ(ex.calls.back(), "P7");
    EXPECT_EQ(ex.calls.size(), 7u);
}

TEST(BehaviorTree, RunGivesUpAfterMaxTicks)
{
    const auto root = build_bt(two_activities());
    Scripted ex;
    ex.script["P1"] = std::deque<Status>(50, Status::Running);
    BehaviorTreeRunner runner(root);
    EXPECT_EQ(runner.run(ex, 10), Status::Running);
}

TEST(BehaviorTree, ResolveTargetComposesWorldAndRelative)
{
    const auto root = build_bt(two_activities());
    const BTNode& place = root.children[0].children[2];
    const Pose6D plate = Pose6D::from_xyz_yaw(1.0, 2.0, 0.0, 0.7);
    const std::map<std::string, Pose6D> scene{{"plate", plate}};

    const auto cup = resolve_target(place, scene);
    ASSERT_TRUE(cup);
    const Eigen::Matrix4d expect = to_transform(plate).matrix() * xyz_yaw(0, 0, 0.01, -0.4).matrix();
    EXPECT_TRUE(to_transform(*cup).matrix().isApprox(expect, 1e-12));

    const HomogeneousTransform to_eff = xyz_yaw(0.03, 0, 0.05, 0.0);
    const auto eff = resolve_target(place, scene, to_eff);
    EXPECT_TRUE(to_transform(*eff).matrix().isApprox(expect * to_eff.matrix(), 1e-12));

    EXPECT_FALSE(resolve_target(place, {}));
    EXPECT_THROW(resolve_target(root.children[0].children[1], scene), std::invalid_argument);
}

TEST(BehaviorTree, YawOnlyTargetsStayLevel)
{
    BTNode leaf;
    leaf.type = BTNodeType::Action;
    leaf.action = ActionType::MoveTo;
    leaf.target = "plate";
    leaf.transform = to_transform(Pose6D(Eigen::Vector3d(0, 0, 0.1),
                                         Eigen::Quaterniond(Eigen::AngleAxisd(0.3, Eigen::Vector3d::UnitX()))));
    const auto p = resolve_target(leaf, {{"plate", Pose6D::from_xyz_yaw(0, 0, 0, 0.5)}}, std::nullopt, true);
    const HomogeneousTransform t = to_transform(*p);
    EXPECT_NEAR(t.linear()(2, 2), 1.0, 1e-12);
    EXPECT_NEAR(yaw_of(t), 0.5, 1e-12);
}

TEST(BehaviorTree, DotNamesEveryNode)
{
    const auto dot = to_dot(build_bt(two_activities()));
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    for (const char* n : {"root", "A1", "A2", "P1", "P9"}) {
        EXPECT_NE(dot.find(n), std::string::npos) << n;
    }
}
