#pragma once

#include "infoplan/signals.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace infoplan {

enum class NodeKind { Hand, Object, Unity };
enum class RelationCategory { HO, OO };
enum class HoType { Manipulation, ContactOnly };
/// Dynamic OO is carried by a Unity node rather than by an edge.
enum class OoType { Dynamic, StaticSignificant, StaticTemporary };
enum class Topology { A, B, C, D };

std::string to_string(NodeKind k);
std::string to_string(HoType t);
std::string to_string(OoType t);
std::string to_string(Topology t);
NodeKind node_kind_from_string(const std::string& s);
HoType ho_type_from_string(const std::string& s);
OoType oo_type_from_string(const std::string& s);

/// Canonical identity of a unity: sorted member ids joined with '+'.
std::string unity_id(std::vector<std::string> members);

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Object;
    Pose6D pose;
    /// Unity only: sorted member ids.
    std::vector<std::string> members;
    /// Element whose pose the node carries (the member closest to the hand for
    /// a unity, the element itself otherwise).
    std::string anchor;
    /// Object the hand interacts with (unity: the HO-detected member).
    std::string manipulated;

    bool operator==(const Node& o) const = default;
};

struct Relation {
    RelationCategory category = RelationCategory::HO;
    std::optional<HoType> ho_type;
    std::optional<OoType> oo_type;
    double mi_value = 0.0;
    bool interaction_complexity = false;

    bool operator==(const Relation& o) const = default;
};

struct Edge {
    std::size_t source = 0;
    std::size_t target = 0;
    Relation relation;

    bool operator==(const Edge& o) const = default;
};

/// Graph for one frame: nodes[0] is the hand, nodes[1] the manipulated object
/// or unity, nodes[2] (optional) the static background object. edges[0] is the
/// HO edge, edges[1] (optional) the static OO edge.
struct SceneGraph {
    Frame frame = 0;
    std::vector<Node> nodes;
    std::vector<Edge> edges;

    Topology topology() const;
    const Node& hand() const { return nodes.at(0); }
    const Node& manipulated() const { return nodes.at(1); }
    const Edge& ho_edge() const { return edges.at(0); }
    const Edge* oo_edge() const { return edges.size() > 1 ? &edges[1] : nullptr; }
    const Node* background() const { return nodes.size() > 2 ? &nodes[2] : nullptr; }

    /// Same topology and node identities (interaction types may differ).
    bool similar(const SceneGraph& other) const;

    /// Throws std::logic_error when the structural invariants do not hold.
    void validate() const;

    bool operator==(const SceneGraph& o) const = default;
};

/// Memory carried from frame k-1 to frame k.
struct DetectorState {
    std::optional<SceneGraph> previous;
    /// Objects the hand has manipulated and not yet moved away from.
    std::set<std::string> manipulated_memory;
};

/// Angle in degrees in [0, 180] between the displacements p(t + w/2) - p(t)
/// of `a` and `b` over `axes`; 180 when either displacement is below 1e-9 m.
double displacement_angle(const Recording& recording, const std::string& a, const std::string& b, Frame t, int w,
                          const std::vector<Axis>& axes);

/// Hand-object detection. `objects` must be sorted nearest-first. Returns the
/// matched object and its relation; updates the manipulation memory.
std::optional<std::pair<std::string, Relation>> detect_ho(SignalBank& bank, const std::string& hand,
                                                          const std::vector<std::string>& objects, Frame k,
                                                          DetectorState& state);

/// Moving-unity detection around `manipulated`. Returns the unity node when at
/// least one other object co-moves with it (or persists from frame k-1 while
/// the hand interaction continues).
std::optional<Node> detect_dynamic_oo(SignalBank& bank, const std::string& hand, const std::string& manipulated,
                                      const std::vector<std::string>& objects, Frame k, const DetectorState& state);

/// Static OO between the manipulated node and the nearest qualifying
/// stationary object. `exclude` holds unity members.
std::optional<std::pair<std::string, Relation>> detect_static_oo(SignalBank& bank, const std::string& manipulated,
                                                                 const std::vector<std::string>& objects,
                                                                 const std::set<std::string>& exclude, Frame k,
                                                                 const DetectorState& state, HoType ho_type);

/// Full per-frame detection. Updates `state` for the next frame.
std::optional<SceneGraph> build_scene_graph(SignalBank& bank, Frame k, DetectorState& state);

/// Frames carrying graphs: [first_frame, first_frame + graphs.size()).
struct GraphSequence {
    Frame first_frame = 0;
    std::vector<std::optional<SceneGraph>> graphs;
};

/// Runs build_scene_graph over every frame with a full window.
GraphSequence build_graph_sequence(SignalBank& bank);

/// First and last frame with a full window, or nullopt for short recordings.
std::optional<std::pair<Frame, Frame>> valid_frame_range(const Recording& recording, int w);

} // namespace infoplan
