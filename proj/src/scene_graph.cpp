#include "infoplan/scene_graph.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace infoplan {

std::string to_string(NodeKind k)
{
    switch (k) {
    case NodeKind::Hand: return "hand";
    case NodeKind::Object: return "object";
    case NodeKind::Unity: return "unity";
    }
    return "?";
}

std::string to_string(HoType t)
{
    return t == HoType::Manipulation ? "manipulation" : "contact_only";
}

std::string to_string(OoType t)
{
    switch (t) {
    case OoType::Dynamic: return "dynamic";
    case OoType::StaticSignificant: return "static_significant";
    case OoType::StaticTemporary: return "static_temporary";
    }
    return "?";
}

std::string to_string(Topology t)
{
    return std::string(1, static_cast<char>('A' + static_cast<int>(t)));
}

NodeKind node_kind_from_string(const std::string& s)
{
    for (NodeKind k : {NodeKind::Hand, NodeKind::Object, NodeKind::Unity}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown node kind '" + s + "'");
}

HoType ho_type_from_string(const std::string& s)
{
    for (HoType t : {HoType::Manipulation, HoType::ContactOnly}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown HO type '" + s + "'");
}

OoType oo_type_from_string(const std::string& s)
{
    for (OoType t : {OoType::Dynamic, OoType::StaticSignificant, OoType::StaticTemporary}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw std::invalid_argument("unknown OO type '" + s + "'");
}

std::string unity_id(std::vector<std::string> members)
{
    std::sort(members.begin(), members.end());
    std::string out;
    for (const auto& m : members) {
        if (!out.empty()) {
            out += '+';
        }
        out += m;
    }
    return out;
}

Topology SceneGraph::topology() const
{
    const bool unity = manipulated().kind == NodeKind::Unity;
    if (edges.size() == 1) {
        return unity ? Topology::B : Topology::A;
    }
    return unity ? Topology::D : Topology::C;
}

bool SceneGraph::similar(const SceneGraph& other) const
{
    if (nodes.size() != other.nodes.size() || edges.size() != other.edges.size()) {
        return false;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id != other.nodes[i].id || nodes[i].kind != other.nodes[i].kind) {
            return false;
        }
    }
    return true;
}

void SceneGraph::validate() const
{
    auto fail = [this](const std::string& what) {
        throw std::logic_error("scene graph at frame " + std::to_string(frame) + ": " + what);
    };
    if (nodes.size() < 2 || nodes.size() > 3) {
        fail("expected 2 or 3 nodes");
    }
    if (edges.size() != nodes.size() - 1) {
        fail("edge count does not match node count");
    }
    if (nodes[0].kind != NodeKind::Hand) {
        fail("first node must be the hand");
    }
    if (nodes[1].kind == NodeKind::Hand) {
        fail("manipulated node cannot be a hand");
    }
    if (nodes[1].kind == NodeKind::Unity) {
        if (nodes[1].members.size() < 2) {
            fail("unity with fewer than 2 members");
        }
        if (!std::is_sorted(nodes[1].members.begin(), nodes[1].members.end())) {
            fail("unity members not sorted");
        }
        if (nodes[1].id != unity_id(nodes[1].members)) {
            fail("unity id does not match its members");
        }
    }
    const Edge& ho = edges[0];
    if (ho.source != 0 || ho.target != 1 || ho.relation.category != RelationCategory::HO || !ho.relation.ho_type ||
        ho.relation.oo_type || ho.relation.mi_value < 0) {
        fail("malformed HO edge");
    }
    if (edges.size() == 2) {
        const Edge& oo = edges[1];
        if (nodes[2].kind != NodeKind::Object) {
            fail("background node must be an object");
        }
        if (oo.source != 1 || oo.target != 2 || oo.relation.category != RelationCategory::OO ||
            !oo.relation.oo_type || oo.relation.ho_type || *oo.relation.oo_type == OoType::Dynamic) {
            fail("malformed OO edge");
        }
    }
}

namespace {

Eigen::VectorXd restrict(const Eigen::Vector3d& v, const std::vector<Axis>& axes)
{
    Eigen::VectorXd out(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) {
        out[static_cast<Eigen::Index>(i)] = v[static_cast<int>(axes[i])];
    }
    return out;
}

/// Present elements of `candidates` ordered by instantaneous distance to
/// `from` at k, ties broken by id.
std::vector<std::string> nearest_first(const Recording& recording, const std::string& from,
                                       std::vector<std::string> candidates, Frame k, const std::vector<Axis>& axes)
{
    std::vector<std::pair<double, std::string>> keyed;
    for (auto& c : candidates) {
        if (c != from && recording.present(c, k)) {
            keyed.emplace_back(instantaneous_distance(recording, from, c, k, axes), std::move(c));
        }
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::string> out;
    for (auto& [d, id] : keyed) {
        out.push_back(std::move(id));
    }
    return out;
}

bool below(const std::optional<double>& v, double threshold)
{
    return v && *v < threshold;
}

bool node_contains(const Node& node, const std::string& id)
{
    if (node.kind == NodeKind::Unity) {
        return std::binary_search(node.members.begin(), node.members.end(), id);
    }
    return node.id == id;
}

bool previous_contact_only(const DetectorState& state, const std::string& object)
{
    if (!state.previous) {
        return false;
    }
    const auto& g = *state.previous;
    return g.ho_edge().relation.ho_type == HoType::ContactOnly && node_contains(g.manipulated(), object);
}

double summed_co_information(const Recording& recording, const std::vector<std::string>& ids, Frame k, int w,
                             const PipelineConfig& config)
{
    const QuantizationGrid grid(config.quantization);
    double total = 0.0;
    for (Axis axis : config.axes) {
        std::vector<std::vector<double>> columns;
        for (const auto& id : ids) {
            std::vector<double> col;
            for (Frame j = k - w / 2; j < k + w / 2; ++j) {
                col.push_back(recording.pose(id, j).position[static_cast<int>(axis)]);
            }
            columns.push_back(std::move(col));
        }
        std::vector<std::span<const double>> spans(columns.begin(), columns.end());
        total += co_information(spans, grid);
    }
    return total;
}

} // namespace

double displacement_angle(const Recording& recording, const std::string& a, const std::string& b, Frame t, int w,
                          const std::vector<Axis>& axes)
{
    const Frame ahead = t + w / 2;
    for (const auto& id : {a, b}) {
        if (!recording.present(id, t) || !recording.present(id, ahead)) {
            throw std::out_of_range("element '" + id + "' absent for displacement at frame " + std::to_string(t));
        }
    }
    const Eigen::VectorXd da =
        restrict(recording.pose(a, ahead).position - recording.pose(a, t).position, axes);
    const Eigen::VectorXd db =
        restrict(recording.pose(b, ahead).position - recording.pose(b, t).position, axes);
    const double na = da.norm();
    const double nb = db.norm();
    if (na < 1e-9 || nb < 1e-9) {
        return 180.0;
    }
    const double c = std::clamp(da.dot(db) / (na * nb), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::numbers::pi;
}

std::optional<std::pair<std::string, Relation>> detect_ho(SignalBank& bank, const std::string& hand,
                                                          const std::vector<std::string>& objects, Frame k,
                                                          DetectorState& state)
{
    const auto& cfg = bank.config();
    for (auto it = state.manipulated_memory.begin(); it != state.manipulated_memory.end();) {
        if (!below(bank.average_distance(hand, *it).at(k), cfg.d_ho_threshold)) {
            it = state.manipulated_memory.erase(it);
        } else {
            ++it;
        }
    }
    for (const auto& o : objects) {
        if (!below(bank.average_distance(hand, o).at(k), cfg.d_ho_threshold)) {
            continue;
        }
        const auto& mi_series = bank.mutual_information(hand, o);
        const auto mi = mi_series.at(k);
        if (!mi) {
            continue;
        }
        Relation r;
        r.category = RelationCategory::HO;
        r.mi_value = *mi;
        if (*mi > cfg.mi_epsilon) {
            r.ho_type = HoType::Manipulation;
            state.manipulated_memory.insert(o);
            return std::make_pair(o, r);
        }
        if (state.manipulated_memory.count(o) != 0) {
            const auto trend = try_trend_sign(mi_series, k, cfg.trend_horizon);
            if (trend == Trend::Negative || previous_contact_only(state, o)) {
                r.ho_type = HoType::ContactOnly;
                return std::make_pair(o, r);
            }
        }
    }
    return std::nullopt;
}

std::optional<Node> detect_dynamic_oo(SignalBank& bank, const std::string& hand, const std::string& manipulated,
                                      const std::vector<std::string>& objects, Frame k, const DetectorState& state)
{
    const auto& rec = bank.recording();
    const auto& cfg = bank.config();
    const int w = cfg.window_samples;

    std::vector<std::string> members{manipulated};
    if (state.previous) {
        const Node& prev = state.previous->manipulated();
        if (prev.kind == NodeKind::Unity && node_contains(prev, manipulated)) {
            for (const auto& m : prev.members) {
                if (m != manipulated && rec.present(m, k) &&
                    below(bank.average_distance(manipulated, m).at(k), cfg.d_oo_threshold)) {
                    members.push_back(m);
                }
            }
        }
    }

    const bool manipulating = bank.mutual_information(hand, manipulated).at(k).value_or(0.0) > cfg.mi_epsilon;
    if (manipulating) {
        for (const auto& o : nearest_first(rec, manipulated, objects, k, cfg.axes)) {
            if (std::find(members.begin(), members.end(), o) != members.end()) {
                continue;
            }
            if (!below(bank.average_distance(manipulated, o).at(k), cfg.d_oo_threshold)) {
                continue;
            }
            if (bank.mutual_information(manipulated, o).at(k).value_or(0.0) <= 1e-9) {
                continue;
            }
            if (displacement_angle(rec, manipulated, o, k, w, cfg.axes) > cfg.angle_threshold_deg) {
                continue;
            }
            auto trial = members;
            trial.push_back(o);
            if (trial.size() >= 3 && summed_co_information(rec, trial, k, w, cfg) <= 1e-9) {
                continue;
            }
            members = std::move(trial);
        }
    }
    if (members.size() < 2) {
        return std::nullopt;
    }

    std::sort(members.begin(), members.end());
    Node node;
    node.kind = NodeKind::Unity;
    node.members = members;
    node.id = unity_id(members);
    node.manipulated = manipulated;
    node.anchor = nearest_first(rec, hand, members, k, cfg.axes).front();
    node.pose = rec.pose(node.anchor, k);
    return node;
}

std::optional<std::pair<std::string, Relation>> detect_static_oo(SignalBank& bank, const std::string& manipulated,
                                                                 const std::vector<std::string>& objects,
                                                                 const std::set<std::string>& exclude, Frame k,
                                                                 const DetectorState& state, HoType ho_type)
{
    const auto& rec = bank.recording();
    const auto& cfg = bank.config();
    std::vector<std::string> candidates;
    for (const auto& o : objects) {
        if (exclude.count(o) == 0 && o != manipulated) {
            candidates.push_back(o);
        }
    }
    for (const auto& o : nearest_first(rec, manipulated, candidates, k, cfg.axes)) {
        if (!bank.stationary(o, k)) {
            continue;
        }
        if (!below(bank.average_distance(manipulated, o).at(k), cfg.d_oo_threshold)) {
            continue;
        }
        bool held = false;
        if (state.previous && state.previous->oo_edge() &&
            state.previous->oo_edge()->relation.oo_type == OoType::StaticSignificant &&
            state.previous->background()->id == o &&
            node_contains(state.previous->manipulated(), manipulated)) {
            held = true;
        }
        Relation r;
        r.category = RelationCategory::OO;
        if (ho_type == HoType::ContactOnly || held) {
            r.oo_type = OoType::StaticSignificant;
        } else {
            const auto trend = try_trend_sign(bank.entropy_of_distance(manipulated, o), k, cfg.trend_horizon);
            r.oo_type = trend == Trend::Negative ? OoType::StaticSignificant : OoType::StaticTemporary;
        }
        return std::make_pair(o, r);
    }
    return std::nullopt;
}

std::optional<SceneGraph> build_scene_graph(SignalBank& bank, Frame k, DetectorState& state)
{
    const auto& rec = bank.recording();
    const auto& cfg = bank.config();
    const int h = cfg.half_window();
    if (k - h < 0 || k + h >= rec.duration()) {
        throw std::out_of_range("frame " + std::to_string(k) + " lacks a full window");
    }
    const std::string hand = rec.hand().id;
    std::vector<std::string> objects;
    for (const auto& o : rec.objects()) {
        if (rec.present_over(o.id, k - h, k + h)) {
            objects.push_back(o.id);
        }
    }
    if (!rec.present_over(hand, k - h, k + h)) {
        state.previous.reset();
        return std::nullopt;
    }

    const auto ordered = nearest_first(rec, hand, objects, k, cfg.axes);
    const auto ho = detect_ho(bank, hand, ordered, k, state);
    if (!ho) {
        state.previous.reset();
        return std::nullopt;
    }
    const auto& [om, ho_rel] = *ho;

    SceneGraph g;
    g.frame = k;
    Node hn;
    hn.id = hand;
    hn.kind = NodeKind::Hand;
    hn.pose = rec.pose(hand, k);
    hn.anchor = hand;
    g.nodes.push_back(hn);

    std::set<std::string> exclude;
    if (auto unity = detect_dynamic_oo(bank, hand, om, objects, k, state)) {
        exclude.insert(unity->members.begin(), unity->members.end());
        g.nodes.push_back(std::move(*unity));
    } else {
        Node on;
        on.id = om;
        on.kind = NodeKind::Object;
        on.pose = rec.pose(om, k);
        on.anchor = om;
        on.manipulated = om;
        g.nodes.push_back(on);
    }
    g.edges.push_back(Edge{0, 1, ho_rel});

    if (auto oo = detect_static_oo(bank, om, objects, exclude, k, state, *ho_rel.ho_type)) {
        Node bn;
        bn.id = oo->first;
        bn.kind = NodeKind::Object;
        bn.pose = rec.pose(oo->first, k);
        bn.anchor = oo->first;
        g.nodes.push_back(bn);
        g.edges.push_back(Edge{1, 2, oo->second});
    }
    state.previous = g;
    return g;
}

std::optional<std::pair<Frame, Frame>> valid_frame_range(const Recording& recording, int w)
{
    const Frame first = w / 2;
    const Frame last = recording.duration() - 1 - w / 2;
    if (last < first) {
        return std::nullopt;
    }
    return std::make_pair(first, last);
}

GraphSequence build_graph_sequence(SignalBank& bank)
{
    GraphSequence seq;
    const auto range = valid_frame_range(bank.recording(), bank.config().window_samples);
    if (!range) {
        throw std::invalid_argument("recording shorter than the window");
    }
    seq.first_frame = range->first;
    DetectorState state;
    for (Frame k = range->first; k <= range->second; ++k) {
        seq.graphs.push_back(build_scene_graph(bank, k, state));
    }
    return seq;
}

} // namespace infoplan
