#include "infoplan/primitives.hpp"

#include <gtest/gtest.h>

using namespace infoplan;

namespace {

Node object(const std::string& id, double x, double y, double yaw = 0.0)
{
    return Node{id, NodeKind::Object, Pose6D::from_xyz_yaw(x, y, 0.0, yaw), {}, id, id};
}

Node hand(double x, double y) { return Node{"hand", NodeKind::Hand, Pose6D::from_xyz_yaw(x, y, 0.05, 0.0), {}, "hand", ""}; }

SceneGraph graph(Frame k, Node h, Node m, double mi, std::optional<Node> bg = std::nullopt, bool complex = false)
{
    SceneGraph g;
    g.frame = k;
    g.nodes = {std::move(h), std::move(m)};
    g.edges.push_back(Edge{0, 1, Relation{RelationCategory::HO, HoType::Manipulation, std::nullopt, mi, false}});
    if (bg) {
        g.nodes.push_back(*bg);
        g.edges.push_back(
            Edge{1, 2, Relation{RelationCategory::OO, std::nullopt, OoType::StaticSignificant, 0.0, complex}});
    }
    return g;
}

// Pick the cup at (0.2, 0.3), carry it to (0.8, 0.3) next to the plate, let go.
// MI falls inside each unit so the representative is the last frame.
GraphSequence pick_and_place(double scan = 0.0)
{
    GraphSequence gs;
    gs.first_frame = 0;
    gs.graphs.push_back(std::nullopt);
    for (int i = 0; i < 5; ++i) {
        const double x = 0.2 + 0.1 * i;
        gs.graphs.push_back(graph(1 + i, hand(x + 0.03, 0.3), object("cup", x, 0.3, 0.1), 5.0 - i));
    }
    for (int i = 0; i < 4; ++i) {
        const double x = 0.7 + 0.025 * i;
        const double mi = (i == 2 ? scan : 0.0) + 3.0 - i;
        gs.graphs.push_back(
            graph(6 + i, hand(x + 0.03, 0.3), object("cup", x, 0.3, 0.1), mi, object("plate", 0.8, 0.35, -0.2)));
    }
    gs.graphs.push_back(std::nullopt);
    return gs;
}

Eigen::Matrix4d world(const Pose6D& p)
{
    // Independent of to_transform: rotation from the quaternion, then translation.
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = p.orientation.toRotationMatrix();
    m.topRightCorner<3, 1>() = p.position;
    return m;
}

std::vector<Primitive> plan_of(const GraphSequence& gs, const ObjectConfig& objects = {})
{
    const auto seg = segment(gs, PipelineConfig{});
    EXPECT_EQ(seg.activities.size(), 1u);
    return map_primitives(seg.activities.front(), objects);
}

} // namespace

TEST(GraphDiff, BoundaryCases)
{
    const auto a = graph(0, hand(0, 0), object("cup", 0, 0), 1.0);
    const auto ab = graph(1, hand(0, 0), object("cup", 0, 0), 1.0, object("plate", 1, 0));

    auto d = graph_diff(a, std::nullopt);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].which, DiffCase::HoStarted);

    d = graph_diff(ab, std::nullopt);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].which, DiffCase::HoStarted);
    EXPECT_EQ(d[1].which, DiffCase::OoStarted);
    EXPECT_EQ(d[1].target.id, "plate");

    d = graph_diff(std::nullopt, ab);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].which, DiffCase::HoEnded);
    EXPECT_EQ(d[1].which, DiffCase::OoEnded);

    d = graph_diff(ab, a);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].which, DiffCase::OoStarted);
    EXPECT_EQ(d[0].frame, 1);

    d = graph_diff(a, ab);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].which, DiffCase::OoEnded);

    const auto ac = graph(2, hand(0, 0), object("cup", 0, 0), 1.0, object("tray", 2, 0));
    d = graph_diff(ac, ab);
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[0].which, DiffCase::OoEnded);
    EXPECT_EQ(d[1].which, DiffCase::OoStarted);

    EXPECT_TRUE(graph_diff(a, a).empty());
    EXPECT_TRUE(graph_diff(std::nullopt, std::nullopt).empty());
    EXPECT_THROW(graph_diff(a, graph(0, hand(0, 0), object("box", 0, 0), 1.0)), std::invalid_argument);
}

TEST(Primitives, PickAndPlaceIsMoveGraspMoveRelease)
{
    const auto p = plan_of(pick_and_place());
    ASSERT_EQ(p.size(), 4u);
    EXPECT_EQ(p[0].kind, PrimitiveKind::Move);
    EXPECT_EQ(p[0].target, "cup");
    EXPECT_EQ(p[0].moving, "hand");
    EXPECT_EQ(p[1].kind, PrimitiveKind::Grasp);
    EXPECT_EQ(p[1].members, std::vector<std::string>{"cup"});
    EXPECT_EQ(p[2].kind, PrimitiveKind::Move);
    EXPECT_EQ(p[2].target, "plate");
    EXPECT_EQ(p[2].moving, "cup");
    EXPECT_FALSE(p[2].complex);
    EXPECT_EQ(p[3].kind, PrimitiveKind::Release);
    EXPECT_EQ(p[3].target, "cup");
}

TEST(Primitives, TransformsComeFromTheRepresentativeGraphs)
{
    const auto gs = pick_and_place();
    const auto p = plan_of(gs);
    // HO representative: lowest MI of the HO unit is its last frame (5).
    const auto& ho = *gs.graphs[5];
    const Eigen::Matrix4d grasp = world(ho.manipulated().pose).inverse() * world(ho.hand().pose);
    EXPECT_TRUE(p[0].relative->matrix().isApprox(grasp, 1e-12));
    // HOO representative: frame 9.
    const auto& hoo = *gs.graphs[9];
    const Eigen::Matrix4d place = world(hoo.background()->pose).inverse() * world(hoo.manipulated().pose);
    EXPECT_TRUE(p[2].relative->matrix().isApprox(place, 1e-12));
}

TEST(Primitives, GraspOffsetIsAppended)
{
    ObjectConfig objects;
    objects["cup"].grasp_offset.translation() = Eigen::Vector3d(0, 0, 0.1);
    const auto plain = plan_of(pick_and_place());
    const auto offset = plan_of(pick_and_place(), objects);
    const Eigen::Matrix4d expect = plain[0].relative->matrix() * objects["cup"].grasp_offset.matrix();
    EXPECT_TRUE(offset[0].relative->matrix().isApprox(expect, 1e-12));
}

TEST(Primitives, RisingMiAddsAComplexMove)
{
    const auto p = plan_of(pick_and_place(2.0));
    ASSERT_EQ(p.size(), 5u);
    EXPECT_EQ(p[2].target, "plate");
    EXPECT_FALSE(p[2].complex);
    EXPECT_TRUE(p[3].complex);
    EXPECT_EQ(p[3].moving, "cup");
    ASSERT_TRUE(p[3].iu_bounds);
    EXPECT_EQ(p[3].iu_bounds->first, 6);
    EXPECT_EQ(p[3].iu_bounds->second, 9);
    EXPECT_EQ(p[4].kind, PrimitiveKind::Release);
}

TEST(Primitives, MoveAwayOnlyWhileHeld)
{
    ObjectConfig objects;
    objects["cup"].move_away = Pose6D::from_xyz_yaw(0.5, 0.5, 0.2, 0.0);
    // The OO ends together with the HO at the activity end: nothing extra.
    EXPECT_EQ(plan_of(pick_and_place(), objects).size(), 4u);

    // OO ends while the hand still holds the cup: a move-away is emitted.
    auto gs = pick_and_place();
    gs.graphs.pop_back();
    for (int i = 0; i < 3; ++i) {
        gs.graphs.push_back(graph(10 + i, hand(0.83, 0.5), object("cup", 0.8, 0.5), 0.5 - 0.1 * i));
    }
    gs.graphs.push_back(std::nullopt);
    const auto p = plan_of(gs, objects);
    ASSERT_EQ(p.size(), 5u);
    EXPECT_EQ(p[3].kind, PrimitiveKind::Move);
    ASSERT_TRUE(p[3].custom_pose);
    EXPECT_EQ(p[3].moving, "cup");
    EXPECT_EQ(p[4].kind, PrimitiveKind::Release);
}

TEST(Primitives, UnityGraspsEveryMember)
{
    GraphSequence gs;
    for (int i = 0; i < 3; ++i) {
        Node u{"joint+profile", NodeKind::Unity, Pose6D::from_xyz_yaw(0.3, 0.3, 0, 0), {"joint", "profile"},
               "profile", "profile"};
        gs.graphs.push_back(graph(i, hand(0.33, 0.3), u, 3.0 - i));
    }
    const auto p = plan_of(gs);
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p[1].target, "profile");
    EXPECT_EQ(p[1].members, (std::vector<std::string>{"joint", "profile"}));
    EXPECT_EQ(p[2].target, "profile");
}

TEST(Primitives, EqualityIsExact)
{
    const auto a = plan_of(pick_and_place());
    auto b = a;
    EXPECT_EQ(a, b);
    b[2].relative->translation().x() += 1e-15;
    EXPECT_NE(a, b);
}

TEST(Primitives, SettingsFallBackToDefaults)
{
    ObjectConfig objects;
    objects["cup"].grasp_point = Eigen::Vector3d(0, 0, 0.05);
    EXPECT_EQ(settings_for(objects, "cup").grasp_point.z(), 0.05);
    EXPECT_EQ(settings_for(objects, "box"), ObjectSettings{});
}
