#include "infoplan/segmentation.hpp"

#include <gtest/gtest.h>

using namespace infoplan;

namespace {

// Compact frame description: target "" = no graph; bg "" = no OO edge.
struct Spec {
    std::string target;
    double mi = 1.0;
    std::string bg;
    OoType oo = OoType::StaticSignificant;
};

SceneGraph graph(Frame k, const Spec& s)
{
    SceneGraph g;
    g.frame = k;
    g.nodes.push_back(Node{"hand", NodeKind::Hand, {}, {}, "hand", ""});
    g.nodes.push_back(Node{s.target, NodeKind::Object, {}, {}, s.target, s.target});
    g.edges.push_back(Edge{0, 1, Relation{RelationCategory::HO, HoType::Manipulation, std::nullopt, s.mi, false}});
    if (!s.bg.empty()) {
        g.nodes.push_back(Node{s.bg, NodeKind::Object, {}, {}, s.bg, ""});
        g.edges.push_back(Edge{1, 2, Relation{RelationCategory::OO, std::nullopt, s.oo, 0.0, false}});
    }
    return g;
}

GraphSequence sequence(Frame first, const std::vector<Spec>& frames)
{
    GraphSequence gs;
    gs.first_frame = first;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].target.empty()) {
            gs.graphs.push_back(std::nullopt);
        } else {
            gs.graphs.push_back(graph(first + static_cast<Frame>(i), frames[i]));
        }
    }
    return gs;
}

std::vector<Spec> repeat(const Spec& s, int n) { return std::vector<Spec>(static_cast<std::size_t>(n), s); }

std::vector<Spec> concat(std::initializer_list<std::vector<Spec>> parts)
{
    std::vector<Spec> out;
    for (const auto& p : parts) {
        out.insert(out.end(), p.begin(), p.end());
    }
    return out;
}

const Spec none{};

} // namespace

TEST(Segmentation, RunsOfSimilarGraphsBecomeUnits)
{
    const auto gs = sequence(20, concat({repeat(none, 3), repeat({"cup"}, 4), repeat({"cup", 1.0, "plate"}, 3),
                                         repeat(none, 2)}));
    const auto ius = segment_ius(gs);
    ASSERT_EQ(ius.size(), 4u);
    EXPECT_EQ(ius[0].kind, IuKind::Idle);
    EXPECT_EQ(ius[0].first, 20);
    EXPECT_EQ(ius[0].last, 22);
    EXPECT_EQ(ius[1].kind, IuKind::HO);
    EXPECT_EQ(ius[1].first, 23);
    EXPECT_EQ(ius[1].length(), 4);
    EXPECT_EQ(ius[1].target(), "cup");
    EXPECT_EQ(ius[2].kind, IuKind::HOO);
    EXPECT_EQ(ius[2].graphs.size(), 3u);
    EXPECT_EQ(ius[3].last, 31);
    EXPECT_EQ(ius[3].target(), "");

    const auto back = flatten(ius);
    EXPECT_EQ(back.first_frame, gs.first_frame);
    EXPECT_EQ(back.graphs, gs.graphs);
}

TEST(Segmentation, ChangeOfIdentitySplitsEvenWithSameTopology)
{
    const auto ius = segment_ius(sequence(0, concat({repeat({"cup"}, 3), repeat({"box"}, 3)})));
    ASSERT_EQ(ius.size(), 2u);
    EXPECT_EQ(ius[0].target(), "cup");
    EXPECT_EQ(ius[1].target(), "box");
}

TEST(Segmentation, TemporaryOoIsFilteredAndNeighboursMerge)
{
    const auto frames = concat({repeat({"cup"}, 4), repeat({"cup", 1.0, "distractor", OoType::StaticTemporary}, 3),
                                repeat({"cup"}, 4), repeat({"cup", 1.0, "plate", OoType::StaticTemporary}, 2),
                                repeat({"cup", 1.0, "plate", OoType::StaticSignificant}, 2), repeat(none, 2)});
    const auto raw = segment_ius(sequence(0, frames));
    ASSERT_EQ(raw.size(), 5u);
    const auto filtered = filter_temporary(raw);
    ASSERT_EQ(filtered.size(), 3u);
    EXPECT_EQ(filtered[0].kind, IuKind::HO);
    EXPECT_EQ(filtered[0].first, 0);
    EXPECT_EQ(filtered[0].last, 10);
    // The plate IU turned significant, so its temporary frames stay.
    EXPECT_EQ(filtered[1].kind, IuKind::HOO);
    EXPECT_EQ(filtered[1].first, 11);
    EXPECT_TRUE(filtered[1].ever_significant());
    EXPECT_EQ(filtered[2].kind, IuKind::Idle);
}

TEST(Segmentation, StrippedUnitWithoutNeighbourBecomesHo)
{
    const auto frames = concat({repeat(none, 2), repeat({"cup", 1.0, "tray", OoType::StaticTemporary}, 3)});
    const auto filtered = filter_temporary(segment_ius(sequence(0, frames)));
    ASSERT_EQ(filtered.size(), 2u);
    EXPECT_EQ(filtered[1].kind, IuKind::HO);
    for (const auto& g : filtered[1].graphs) {
        EXPECT_EQ(g.edges.size(), 1u);
        EXPECT_NO_THROW(g.validate());
    }
}

TEST(Segmentation, RepresentativeIsTheMinimumMiEarliestOnTies)
{
    const auto ius = segment_ius(
        sequence(0, {Spec{"cup", 3.0}, Spec{"cup", 1.0}, Spec{"cup", 2.0}, Spec{"cup", 1.0}, Spec{"cup", 4.0}}));
    ASSERT_EQ(ius.size(), 1u);
    EXPECT_EQ(representative_graph(ius[0]).frame, 1);
    const auto idle = segment_ius(sequence(0, repeat(none, 3)));
    EXPECT_THROW(representative_graph(idle[0]), std::invalid_argument);
}

TEST(Segmentation, ComplexityNeedsARiseAboveTolerance)
{
    auto iu_of = [](std::vector<double> mis) {
        std::vector<Spec> frames;
        for (double m : mis) {
            frames.push_back({"cup", m, "plate"});
        }
        return segment_ius(sequence(0, frames)).front();
    };
    EXPECT_FALSE(interaction_complexity(iu_of({3, 2, 2, 1, 0}), 0.01));
    EXPECT_FALSE(interaction_complexity(iu_of({3, 2, 2.01, 1, 0}), 0.01));
    EXPECT_TRUE(interaction_complexity(iu_of({3, 2, 2.02, 1, 0}), 0.01));
    EXPECT_TRUE(interaction_complexity(iu_of({1, 2}), 0.5));
    EXPECT_THROW(interaction_complexity(iu_of({1}), 0.01), std::invalid_argument);
}

TEST(Segmentation, ActivitiesGroupByTargetAndCloseOnIdle)
{
    const auto frames =
        concat({repeat(none, 2), repeat({"cup"}, 3), repeat({"cup", 1.0, "plate"}, 3), repeat(none, 2),
                repeat({"cup"}, 2), repeat({"box"}, 2), repeat({"box", 1.0, "plate"}, 2)});
    PipelineConfig cfg;
    const auto seg = segment(sequence(0, frames), cfg);
    ASSERT_EQ(seg.activities.size(), 3u);
    EXPECT_EQ(seg.activities[0].target(), "cup");
    EXPECT_EQ(seg.activities[0].ius.size(), 2u);
    EXPECT_EQ(seg.activities[0].first, 2);
    EXPECT_EQ(seg.activities[0].last, 7);
    EXPECT_EQ(seg.activities[1].target(), "cup");
    EXPECT_EQ(seg.activities[1].ius.size(), 1u);
    EXPECT_EQ(seg.activities[2].target(), "box");
    EXPECT_EQ(seg.activities[2].ius.size(), 2u);
    for (std::size_t i = 0; i < seg.ius.size(); ++i) {
        EXPECT_EQ(seg.ius[i].index, static_cast<int>(i));
        EXPECT_EQ(seg.ius[i].repr.has_value(), seg.ius[i].kind != IuKind::Idle);
    }
}

TEST(Segmentation, ComplexityFlagLandsOnTheRepresentativeOo)
{
    std::vector<Spec> frames{{"cup", 2.0, "scanner"}, {"cup", 1.0, "scanner"}, {"cup", 1.5, "scanner"},
                             {"cup", 0.5, "scanner"}};
    const auto seg = segment(sequence(0, frames), PipelineConfig{});
    ASSERT_EQ(seg.ius.size(), 1u);
    ASSERT_TRUE(seg.ius[0].repr);
    EXPECT_EQ(seg.ius[0].repr->frame, 3);
    EXPECT_TRUE(seg.ius[0].repr->oo_edge()->relation.interaction_complexity);
}

TEST(Segmentation, FilterCanBeDisabled)
{
    const auto frames = concat({repeat({"cup"}, 3), repeat({"cup", 1.0, "distractor", OoType::StaticTemporary}, 3),
                                repeat({"cup"}, 3)});
    PipelineConfig cfg;
    EXPECT_EQ(segment(sequence(0, frames), cfg).ius.size(), 1u);
    cfg.filter_temporary = false;
    EXPECT_EQ(segment(sequence(0, frames), cfg).ius.size(), 3u);
}

TEST(Segmentation, KindNamesRoundTrip)
{
    for (auto k : {IuKind::Idle, IuKind::HO, IuKind::HOO}) {
        EXPECT_EQ(iu_kind_from_string(to_string(k)), k);
    }
}

TEST(Segmentation, TemporaryUnitsAreNeverComplex)
{
    std::vector<Spec> frames{{"cup", 0.5, "distractor", OoType::StaticTemporary},
                             {"cup", 1.5, "distractor", OoType::StaticTemporary},
                             {"cup", 2.5, "distractor", OoType::StaticTemporary}};
    PipelineConfig cfg;
    cfg.filter_temporary = false;
    const auto seg = segment(sequence(0, frames), cfg);
    ASSERT_EQ(seg.ius.size(), 1u);
    EXPECT_EQ(seg.ius[0].kind, IuKind::HOO);
    EXPECT_FALSE(seg.ius[0].repr->oo_edge()->relation.interaction_complexity);
    EXPECT_TRUE(interaction_complexity(seg.ius[0], cfg.complexity_tolerance));
}
