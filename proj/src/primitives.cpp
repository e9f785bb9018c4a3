#include "infoplan/primitives.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace infoplan {

std::string to_string(DiffCase c)
{
    switch (c) {
    case DiffCase::HoStarted: return "ho_started";
    case DiffCase::HoEnded: return "ho_ended";
    case DiffCase::OoStarted: return "oo_started";
    case DiffCase::OoEnded: return "oo_ended";
    }
    return "?";
}

std::string to_string(PrimitiveKind k)
{
    switch (k) {
    case PrimitiveKind::Move: return "move";
    case PrimitiveKind::Grasp: return "grasp";
    case PrimitiveKind::Release: return "release";
    }
    return "?";
}

bool Primitive::operator==(const Primitive& o) const
{
    if (relative.has_value() != o.relative.has_value()) {
        return false;
    }
    if (relative && relative->matrix() != o.relative->matrix()) {
        return false;
    }
    return kind == o.kind && target == o.target && moving == o.moving && members == o.members &&
           complex == o.complex && custom_pose == o.custom_pose && iu_bounds == o.iu_bounds;
}

const ObjectSettings& settings_for(const ObjectConfig& config, const std::string& id)
{
    static const ObjectSettings defaults;
    const auto it = config.find(id);
    return it == config.end() ? defaults : it->second;
}

namespace {

GraphDiff edge_diff(DiffCase which, const SceneGraph& g, const Edge& e)
{
    return GraphDiff{which, g.nodes.at(e.source), g.nodes.at(e.target), e.relation, g.frame, {g.frame, g.frame}};
}

} // namespace

std::vector<GraphDiff> graph_diff(const std::optional<SceneGraph>& eff, const std::optional<SceneGraph>& prec)
{
    std::vector<GraphDiff> out;
    if (!eff && !prec) {
        return out;
    }
    if (!prec) {
        out.push_back(edge_diff(DiffCase::HoStarted, *eff, eff->ho_edge()));
        if (eff->oo_edge()) {
            out.push_back(edge_diff(DiffCase::OoStarted, *eff, *eff->oo_edge()));
        }
        return out;
    }
    if (!eff) {
        if (prec->oo_edge()) {
            out.push_back(edge_diff(DiffCase::OoEnded, *prec, *prec->oo_edge()));
        }
        out.insert(out.begin(), edge_diff(DiffCase::HoEnded, *prec, prec->ho_edge()));
        return out;
    }
    if (eff->manipulated().id != prec->manipulated().id) {
        throw std::invalid_argument("graphs at frames " + std::to_string(prec->frame) + " and " +
                                    std::to_string(eff->frame) + " belong to different activities");
    }
    const Node* before = prec->background();
    const Node* after = eff->background();
    const bool same = before && after && before->id == after->id;
    if (before && !same) {
        out.push_back(edge_diff(DiffCase::OoEnded, *prec, *prec->oo_edge()));
    }
    if (after && !same) {
        out.push_back(edge_diff(DiffCase::OoStarted, *eff, *eff->oo_edge()));
    }
    return out;
}

std::vector<GraphDiff> activity_diffs(const Activity& activity)
{
    std::vector<GraphDiff> out;
    std::optional<SceneGraph> prec;
    std::pair<Frame, Frame> prec_bounds{0, 0};
    for (const auto& iu : activity.ius) {
        for (auto d : graph_diff(iu.repr, prec)) {
            d.iu = d.which == DiffCase::OoEnded ? prec_bounds : std::make_pair(iu.first, iu.last);
            out.push_back(std::move(d));
        }
        prec = iu.repr;
        prec_bounds = {iu.first, iu.last};
    }
    for (auto d : graph_diff(std::nullopt, prec)) {
        d.iu = prec_bounds;
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Primitive> map_primitives(const Activity& activity, const ObjectConfig& objects)
{
    std::vector<Primitive> out;
    std::set<std::string> held;
    for (const auto& d : activity_diffs(activity)) {
        switch (d.which) {
        case DiffCase::HoStarted: {
            const Node& m = d.target;
            Primitive move;
            move.kind = PrimitiveKind::Move;
            move.target = m.anchor;
            move.moving = d.source.id;
            move.relative = relative_transform(m.pose, d.source.pose) * settings_for(objects, m.anchor).grasp_offset;
            out.push_back(move);
            Primitive grasp;
            grasp.kind = PrimitiveKind::Grasp;
            grasp.target = m.anchor;
            grasp.members = m.kind == NodeKind::Unity ? m.members : std::vector<std::string>{m.id};
            out.push_back(grasp);
            held.insert(m.anchor);
            break;
        }
        case DiffCase::OoStarted: {
            Primitive move;
            move.kind = PrimitiveKind::Move;
            move.target = d.target.id;
            move.moving = d.source.anchor;
            move.relative = relative_transform(d.target.pose, d.source.pose);
            out.push_back(move);
            if (d.relation.interaction_complexity) {
                Primitive stub;
                stub.kind = PrimitiveKind::Move;
                stub.target = d.source.anchor;
                stub.moving = d.source.anchor;
                stub.complex = true;
                stub.iu_bounds = d.iu;
                out.push_back(stub);
            }
            break;
        }
        case DiffCase::OoEnded: {
            // An OO that expires together with the HO leaves the object where
            // it was released.
            const auto& away = settings_for(objects, d.source.anchor).move_away;
            if (away && held.count(d.source.anchor) != 0) {
                Primitive move;
                move.kind = PrimitiveKind::Move;
                move.moving = d.source.anchor;
                move.custom_pose = *away;
                out.push_back(move);
            }
            break;
        }
        case DiffCase::HoEnded: {
            // A unity may change anchor between IUs; release whichever member
            // was grasped.
            std::string id = d.target.anchor;
            for (const auto& h : held) {
                if (std::find(d.target.members.begin(), d.target.members.end(), h) != d.target.members.end()) {
                    id = h;
                }
            }
            if (held.erase(id) == 0) {
                throw std::logic_error("release of '" + id + "' without a preceding grasp");
            }
            Primitive release;
            release.kind = PrimitiveKind::Release;
            release.target = id;
            out.push_back(release);
            break;
        }
        }
    }
    return out;
}

std::vector<ActivityPlan> plan_activities(const std::vector<Activity>& activities, const ObjectConfig& objects)
{
    std::vector<ActivityPlan> out;
    for (const auto& a : activities) {
        out.push_back(ActivityPlan{a.index, a.first, a.last, map_primitives(a, objects)});
    }
    return out;
}

} // namespace infoplan
