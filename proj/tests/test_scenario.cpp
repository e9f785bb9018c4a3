#include "infoplan/scenario.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

#include <cmath>

using namespace infoplan;

namespace {

Scenario make(Template t, std::uint64_t seed = 0, double sigma = 0.0)
{
    ScenarioSpec spec;
    spec.tmpl = t;
    spec.seed = seed;
    spec.noise_sigma = sigma;
    return generate_scenario(spec);
}

bool on_half_lattice(double v, double q)
{
    const double r = v / q - std::floor(v / q);
    return std::abs(r - 0.5) < 1e-6;
}

} // namespace

TEST(Scenario, MinimumJerkProfile)
{
    EXPECT_EQ(minimum_jerk(0.0), 0.0);
    EXPECT_EQ(minimum_jerk(1.0), 1.0);
    EXPECT_NEAR(minimum_jerk(0.5), 0.5, 1e-15);
    EXPECT_EQ(minimum_jerk(-1.0), 0.0);
    EXPECT_EQ(minimum_jerk(2.0), 1.0);
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double s = minimum_jerk(i / 100.0);
        EXPECT_GE(s, prev);
        prev = s;
    }
    // Zero velocity at both ends.
    EXPECT_NEAR(minimum_jerk(1e-4) / 1e-4, 0.0, 1e-6);
}

TEST(Scenario, TemplateNamesRoundTrip)
{
    EXPECT_EQ(all_templates().size(), 9u);
    for (auto t : all_templates()) {
        EXPECT_EQ(template_from_string(to_string(t)), t);
    }
    EXPECT_THROW(template_from_string("juggle"), std::invalid_argument);
}

TEST(Scenario, GenerationIsDeterministic)
{
    for (auto t : all_templates()) {
        const auto a = make(t, 3, 0.01);
        const auto b = make(t, 3, 0.01);
        EXPECT_TRUE(a.recording == b.recording) << to_string(t);
    }
    EXPECT_FALSE(make(Template::Cashier, 1).recording == make(Template::Cashier, 2).recording);
}

TEST(Scenario, NoiseFreeLayoutSitsOnTheHalfBinLattice)
{
    for (auto t : all_templates()) {
        const auto sc = make(t, 4);
        for (const auto& track : sc.recording.tracks()) {
            ASSERT_EQ(track.poses.size(), std::size_t(sc.recording.duration()));
            const auto& p = track.poses.front();
            ASSERT_TRUE(p);
            EXPECT_TRUE(on_half_lattice(p->position.x(), 0.01)) << to_string(t) << " " << track.element.id;
            EXPECT_TRUE(on_half_lattice(p->position.y(), 0.01)) << to_string(t) << " " << track.element.id;
        }
    }
}

TEST(Scenario, NoiseLeavesTheTruthUnchanged)
{
    const auto clean = make(Template::Relocate, 5);
    const auto noisy = make(Template::Relocate, 5, 0.03);
    EXPECT_EQ(clean.recording.duration(), noisy.recording.duration());
    EXPECT_FALSE(clean.recording == noisy.recording);
    ASSERT_EQ(clean.truth.ius.size(), noisy.truth.ius.size());
    for (std::size_t i = 0; i < clean.truth.ius.size(); ++i) {
        EXPECT_EQ(clean.truth.ius[i].frames.first, noisy.truth.ius[i].frames.first);
        EXPECT_EQ(clean.truth.ius[i].frames.last, noisy.truth.ius[i].frames.last);
    }
    // Sample standard deviation of the injected noise is near sigma.
    double sum = 0, sq = 0;
    const auto& a = clean.recording.track("cup").poses;
    const auto& b = noisy.recording.track("cup").poses;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = b[k]->position.x() - a[k]->position.x();
        sum += d;
        sq += d * d;
    }
    const double n = double(a.size());
    EXPECT_NEAR(std::sqrt(sq / n - (sum / n) * (sum / n)), 0.03, 0.005);
}

TEST(Scenario, TruthUnitsTileTheValidRange)
{
    for (auto t : all_templates()) {
        const auto sc = make(t, 2);
        const auto& ius = sc.truth.ius;
        ASSERT_FALSE(ius.empty());
        EXPECT_EQ(ius.front().frames.first, 20);
        EXPECT_EQ(ius.back().frames.last, sc.recording.duration() - 21);
        for (std::size_t i = 1; i < ius.size(); ++i) {
            EXPECT_EQ(ius[i].frames.first, ius[i - 1].frames.last + 1) << to_string(t);
        }
        EXPECT_EQ(ius.front().kind, IuKind::Idle);
        EXPECT_EQ(ius.back().kind, IuKind::Idle);
        for (const auto& a : sc.truth.activities) {
            EXPECT_EQ(a.primitives.front(), "move");
            EXPECT_EQ(a.primitives[1], "grasp");
            EXPECT_EQ(a.primitives.back(), "release");
            EXPECT_LE(a.contact.first, a.carry.first);
            EXPECT_GE(a.contact.last, a.carry.last);
        }
    }
}

TEST(Scenario, ExpectedStructurePerTemplate)
{
    const auto cashier = make(Template::Cashier);
    ASSERT_EQ(cashier.truth.activities.size(), 1u);
    EXPECT_EQ(cashier.truth.activities[0].primitives,
              (std::vector<std::string>{"move", "grasp", "move", "move_complex", "move", "release"}));
    const auto tray = make(Template::TrayTwoCups);
    EXPECT_EQ(tray.truth.activities.size(), 2u);
    EXPECT_EQ(tray.truth.placements.size(), 2u);
    const auto assembly = make(Template::CarryAssembly);
    EXPECT_EQ(assembly.truth.activities[0].target, "joint+profile");
    EXPECT_EQ(assembly.truth.activities[0].members.size(), 2u);
}

TEST(Scenario, SceneAtSkipsTheHand)
{
    const auto sc = make(Template::PickAndPlace);
    const auto scene = scene_at(sc.recording, 0);
    EXPECT_EQ(scene.size(), 2u);
    EXPECT_EQ(scene.count("hand"), 0u);
    EXPECT_EQ(scene.at("cup").position, sc.truth.initial_scene.at("cup").position);
}

TEST(Scenario, RandomSceneKeepsObjectsApart)
{
    const std::vector<std::string> ids{"a", "b", "c", "d"};
    for (std::uint64_t seed = 1; seed < 20; ++seed) {
        const auto s = random_scene(ids, seed);
        ASSERT_EQ(s.size(), 4u);
        for (const auto& [i, p] : s) {
            for (const auto& [j, q] : s) {
                if (i < j) {
                    EXPECT_GE((p.position - q.position).head<2>().norm(), 0.3);
                }
            }
        }
        EXPECT_EQ(random_scene(ids, seed).at("c").position, s.at("c").position);
    }
}

TEST(Scenario, RejectsInvalidSpecs)
{
    ScenarioSpec spec;
    spec.noise_sigma = -1.0;
    EXPECT_THROW(generate_scenario(spec), std::invalid_argument);
}

TEST(Scenario, BoundaryComparisonExplainsMismatches)
{
    const auto sc = make(Template::Relocate);
    std::vector<InteractionUnit> detected;
    for (const auto& u : sc.truth.ius) {
        InteractionUnit iu;
        iu.first = u.frames.first + (detected.empty() ? 0 : 3);
        iu.last = u.frames.last;
        iu.kind = u.kind;
        if (u.kind != IuKind::Idle) {
            SceneGraph g;
            g.nodes.push_back(Node{"hand", NodeKind::Hand});
            g.nodes.push_back(Node{u.target, NodeKind::Object});
            g.edges.push_back(Edge{0, 1, Relation{}});
            iu.graphs.push_back(g);
        }
        detected.push_back(iu);
    }
    auto r = compare_boundaries(detected, sc.truth.ius);
    EXPECT_TRUE(r.structure_matches);
    EXPECT_EQ(r.max_error, 3);
    detected.pop_back();
    r = compare_boundaries(detected, sc.truth.ius);
    EXPECT_FALSE(r.structure_matches);
    EXPECT_FALSE(r.message.empty());
}

TEST(Scenario, TruthDocumentListsUnitsAndPlacements)
{
    const auto sc = make(Template::TrayTwoCups);
    const auto doc = nlohmann::json::parse(truth_json(sc.truth));
    EXPECT_EQ(doc.at("ius").size(), sc.truth.ius.size());
    EXPECT_EQ(doc.at("placements").size(), 2u);
    EXPECT_EQ(doc.at("placements")[0].at("relative").size(), 16u);
    EXPECT_TRUE(doc.at("objects").contains("cup1"));
}
