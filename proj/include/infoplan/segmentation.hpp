#pragma once

#include "infoplan/scene_graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace infoplan {

enum class IuKind { Idle, HO, HOO };

std::string to_string(IuKind k);
IuKind iu_kind_from_string(const std::string& s);

/// Maximal run of frames whose graphs share topology and node identities.
/// Bounds are inclusive.
struct InteractionUnit {
    int index = 0;
    Frame first = 0;
    Frame last = 0;
    IuKind kind = IuKind::Idle;
    std::vector<SceneGraph> graphs;
    std::optional<SceneGraph> repr;

    Frame length() const { return last - first + 1; }
    /// Identity of the hand-side target (object id or unity id); empty for idle.
    std::string target() const;
    /// True when some member graph carries a significant static OO.
    bool ever_significant() const;
};

struct Activity {
    int index = 0;
    Frame first = 0;
    Frame last = 0;
    std::vector<InteractionUnit> ius;

    std::string target() const { return ius.front().target(); }
};

/// Splits the graph sequence into IUs. Graph-less runs become one idle IU.
std::vector<InteractionUnit> segment_ius(const GraphSequence& graphs);

/// Inverse of segment_ius (idle IUs turn back into empty frames).
GraphSequence flatten(const std::vector<InteractionUnit>& ius);

/// Drops the OO edge of every HOO IU that never turns significant, then
/// re-segments so the stripped frames merge with their same-HO neighbours.
/// A stripped IU without such a neighbour simply becomes an HO IU.
std::vector<InteractionUnit> filter_temporary(const std::vector<InteractionUnit>& ius);

/// Member graph with the smallest HO mutual information (earliest on ties).
/// Throws on idle IUs.
const SceneGraph& representative_graph(const InteractionUnit& iu);

/// False iff no step of the HO mutual-information series rises by more than
/// `tolerance` bits. Needs at least two graphs.
bool interaction_complexity(const InteractionUnit& iu, double tolerance);

/// Fills repr on every non-idle IU and, for HOO IUs whose OO was significant
/// at some frame, the complexity flag on the representative graph's OO
/// relation. Renumbers the IUs.
void annotate(std::vector<InteractionUnit>& ius, double complexity_tolerance);

/// Groups consecutive non-idle IUs with the same target. Needs annotated IUs.
std::vector<Activity> group_activities(const std::vector<InteractionUnit>& ius);

struct Segmentation {
    std::vector<InteractionUnit> ius;
    std::vector<Activity> activities;
};

/// segment_ius, optional filter_temporary, annotate, group_activities.
Segmentation segment(const GraphSequence& graphs, const PipelineConfig& config);

} // namespace infoplan
