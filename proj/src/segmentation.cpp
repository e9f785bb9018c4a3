#include "infoplan/segmentation.hpp"

#include <stdexcept>

namespace infoplan {

std::string to_string(IuKind k)
{
    switch (k) {
    case IuKind::Idle: return "idle";
    case IuKind::HO: return "HO";
    case IuKind::HOO: return "HOO";
    }
    return "?";
}

IuKind iu_kind_from_string(const std::string& s)
{
    for (IuKind k : {IuKind::Idle, IuKind::HO, IuKind::HOO}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown IU kind '" + s + "'");
}

std::string InteractionUnit::target() const
{
    return graphs.empty() ? std::string() : graphs.front().manipulated().id;
}

bool InteractionUnit::ever_significant() const
{
    for (const auto& g : graphs) {
        if (const Edge* oo = g.oo_edge(); oo && oo->relation.oo_type == OoType::StaticSignificant) {
            return true;
        }
    }
    return false;
}

std::vector<InteractionUnit> segment_ius(const GraphSequence& seq)
{
    std::vector<InteractionUnit> out;
    for (std::size_t i = 0; i < seq.graphs.size(); ++i) {
        const Frame k = seq.first_frame + static_cast<Frame>(i);
        const auto& g = seq.graphs[i];
        bool extend = false;
        if (!out.empty()) {
            auto& cur = out.back();
            if (!g) {
                extend = cur.kind == IuKind::Idle;
            } else if (cur.kind != IuKind::Idle) {
                extend = cur.graphs.back().similar(*g);
            }
        }
        if (extend) {
            out.back().last = k;
            if (g) {
                out.back().graphs.push_back(*g);
            }
            continue;
        }
        InteractionUnit iu;
        iu.index = static_cast<int>(out.size());
        iu.first = iu.last = k;
        if (g) {
            iu.kind = g->edges.size() > 1 ? IuKind::HOO : IuKind::HO;
            iu.graphs.push_back(*g);
        }
        out.push_back(std::move(iu));
    }
    return out;
}

GraphSequence flatten(const std::vector<InteractionUnit>& ius)
{
    GraphSequence seq;
    if (ius.empty()) {
        return seq;
    }
    seq.first_frame = ius.front().first;
    for (const auto& iu : ius) {
        if (iu.kind == IuKind::Idle) {
            seq.graphs.insert(seq.graphs.end(), static_cast<std::size_t>(iu.length()), std::nullopt);
        } else {
            seq.graphs.insert(seq.graphs.end(), iu.graphs.begin(), iu.graphs.end());
        }
    }
    return seq;
}

std::vector<InteractionUnit> filter_temporary(const std::vector<InteractionUnit>& ius)
{
    auto stripped = ius;
    bool changed = false;
    for (auto& iu : stripped) {
        if (iu.kind != IuKind::HOO || iu.ever_significant()) {
            continue;
        }
        for (auto& g : iu.graphs) {
            g.nodes.resize(2);
            g.edges.resize(1);
        }
        iu.kind = IuKind::HO;
        changed = true;
    }
    if (!changed) {
        return ius;
    }
    return segment_ius(flatten(stripped));
}

const SceneGraph& representative_graph(const InteractionUnit& iu)
{
    if (iu.kind == IuKind::Idle || iu.graphs.empty()) {
        throw std::invalid_argument("idle IU has no representative graph");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < iu.graphs.size(); ++i) {
        if (iu.graphs[i].ho_edge().relation.mi_value < iu.graphs[best].ho_edge().relation.mi_value) {
            best = i;
        }
    }
    return iu.graphs[best];
}

bool interaction_complexity(const InteractionUnit& iu, double tolerance)
{
    if (iu.graphs.size() < 2) {
        throw std::invalid_argument("interaction complexity needs at least two graphs");
    }
    for (std::size_t i = 1; i < iu.graphs.size(); ++i) {
        const double rise = iu.graphs[i].ho_edge().relation.mi_value - iu.graphs[i - 1].ho_edge().relation.mi_value;
        if (rise > tolerance) {
            return true;
        }
    }
    return false;
}

void annotate(std::vector<InteractionUnit>& ius, double complexity_tolerance)
{
    for (std::size_t i = 0; i < ius.size(); ++i) {
        auto& iu = ius[i];
        iu.index = static_cast<int>(i);
        if (iu.kind == IuKind::Idle) {
            iu.repr.reset();
            continue;
        }
        iu.repr = representative_graph(iu);
        // A pass-by that never turned significant is no interaction with the
        // background object, so its MI ramp says nothing about complexity.
        if (iu.kind == IuKind::HOO) {
            iu.repr->edges[1].relation.interaction_complexity =
                iu.graphs.size() >= 2 && iu.ever_significant() && interaction_complexity(iu, complexity_tolerance);
        }
    }
}

std::vector<Activity> group_activities(const std::vector<InteractionUnit>& ius)
{
    std::vector<Activity> out;
    bool open = false;
    for (const auto& iu : ius) {
        if (iu.kind == IuKind::Idle) {
            open = false;
            continue;
        }
        if (!iu.repr) {
            throw std::invalid_argument("IU " + std::to_string(iu.index) + " has no representative graph");
        }
        if (open && out.back().target() == iu.target()) {
            out.back().ius.push_back(iu);
            out.back().last = iu.last;
            continue;
        }
        Activity a;
        a.index = static_cast<int>(out.size());
        a.first = iu.first;
        a.last = iu.last;
        a.ius.push_back(iu);
        out.push_back(std::move(a));
        open = true;
    }
    return out;
}

Segmentation segment(const GraphSequence& graphs, const PipelineConfig& config)
{
    Segmentation s;
    s.ius = segment_ius(graphs);
    if (config.filter_temporary) {
        s.ius = filter_temporary(s.ius);
    }
    annotate(s.ius, config.complexity_tolerance);
    s.activities = group_activities(s.ius);
    return s;
}

} // namespace infoplan
