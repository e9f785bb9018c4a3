#include "infoplan/serialization.hpp"

#include "json_util.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace infoplan {

using nlohmann::json;
using detail::pose_from;
using detail::pose_json;

namespace {

json relation_json(const Relation& r)
{
    json j;
    j["category"] = r.category == RelationCategory::HO ? "HO" : "OO";
    if (r.ho_type) {
        j["ho_type"] = to_string(*r.ho_type);
        j["mi"] = r.mi_value;
    }
    if (r.oo_type) {
        j["oo_type"] = to_string(*r.oo_type);
        j["complexity"] = r.interaction_complexity;
    }
    return j;
}

Relation relation_from(const json& j)
{
    Relation r;
    const auto cat = j.at("category").get<std::string>();
    if (cat != "HO" && cat != "OO") {
        throw std::invalid_argument("unknown relation category '" + cat + "'");
    }
    r.category = cat == "HO" ? RelationCategory::HO : RelationCategory::OO;
    if (j.contains("ho_type")) {
        r.ho_type = ho_type_from_string(j.at("ho_type").get<std::string>());
        r.mi_value = j.value("mi", 0.0);
    }
    if (j.contains("oo_type")) {
        r.oo_type = oo_type_from_string(j.at("oo_type").get<std::string>());
        r.interaction_complexity = j.value("complexity", false);
    }
    return r;
}

json graph_json(Frame k, const std::optional<SceneGraph>& g)
{
    json j;
    j["frame"] = k;
    j["nodes"] = json::array();
    j["edges"] = json::array();
    if (!g) {
        return j;
    }
    for (const auto& n : g->nodes) {
        json nj = pose_json(n.pose);
        nj["id"] = n.id;
        nj["kind"] = to_string(n.kind);
        nj["anchor"] = n.anchor;
        if (!n.manipulated.empty()) {
            nj["manipulated"] = n.manipulated;
        }
        if (!n.members.empty()) {
            nj["members"] = n.members;
        }
        j["nodes"].push_back(std::move(nj));
    }
    for (const auto& e : g->edges) {
        json ej = relation_json(e.relation);
        ej["source"] = e.source;
        ej["target"] = e.target;
        j["edges"].push_back(std::move(ej));
    }
    return j;
}

json primitive_json(const Primitive& p)
{
    json j;
    j["kind"] = to_string(p.kind);
    if (!p.target.empty()) {
        j["target"] = p.target;
    }
    if (!p.moving.empty()) {
        j["moving"] = p.moving;
    }
    if (!p.members.empty()) {
        j["members"] = p.members;
    }
    if (p.relative) {
        j["transform"] = to_row_major(*p.relative);
    }
    if (p.complex) {
        j["complex"] = true;
    }
    if (p.custom_pose) {
        j["custom_pose"] = pose_json(*p.custom_pose);
    }
    if (p.iu_bounds) {
        j["frames"] = {p.iu_bounds->first, p.iu_bounds->second};
    }
    return j;
}

Primitive primitive_from(const json& j)
{
    Primitive p;
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "move") {
        p.kind = PrimitiveKind::Move;
    } else if (kind == "grasp") {
        p.kind = PrimitiveKind::Grasp;
    } else if (kind == "release") {
        p.kind = PrimitiveKind::Release;
    } else {
        throw std::invalid_argument("unknown primitive kind '" + kind + "'");
    }
    p.target = j.value("target", std::string());
    p.moving = j.value("moving", std::string());
    if (j.contains("members")) {
        p.members = j.at("members").get<std::vector<std::string>>();
    }
    if (j.contains("transform")) {
        const auto v = j.at("transform").get<std::vector<double>>();
        if (v.size() != 16) {
            throw std::invalid_argument("transform needs 16 values");
        }
        std::array<double, 16> a{};
        std::copy(v.begin(), v.end(), a.begin());
        p.relative = from_row_major(a);
    }
    p.complex = j.value("complex", false);
    if (j.contains("custom_pose")) {
        p.custom_pose = pose_from(j.at("custom_pose"));
    }
    if (j.contains("frames")) {
        const auto f = j.at("frames").get<std::vector<Frame>>();
        p.iu_bounds = std::make_pair(f.at(0), f.at(1));
    }
    return p;
}

} // namespace

void write_graphs_jsonl(std::ostream& out, const GraphSequence& graphs)
{
    for (std::size_t i = 0; i < graphs.graphs.size(); ++i) {
        out << graph_json(graphs.first_frame + static_cast<Frame>(i), graphs.graphs[i]).dump() << '\n';
    }
}

GraphSequence read_graphs_jsonl(std::istream& in)
{
    GraphSequence seq;
    std::string line;
    int line_no = 0;
    Frame expected = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const json j = json::parse(line);
            const Frame k = j.at("frame").get<Frame>();
            if (seq.graphs.empty()) {
                seq.first_frame = k;
            } else if (k != expected) {
                throw std::invalid_argument("frames must be consecutive");
            }
            expected = k + 1;
            if (j.at("nodes").empty()) {
                seq.graphs.emplace_back(std::nullopt);
                continue;
            }
            SceneGraph g;
            g.frame = k;
            for (const auto& nj : j.at("nodes")) {
                Node n;
                n.id = nj.at("id").get<std::string>();
                n.kind = node_kind_from_string(nj.at("kind").get<std::string>());
                n.pose = pose_from(nj);
                n.anchor = nj.value("anchor", n.id);
                n.manipulated = nj.value("manipulated", std::string());
                if (nj.contains("members")) {
                    n.members = nj.at("members").get<std::vector<std::string>>();
                }
                g.nodes.push_back(std::move(n));
            }
            for (const auto& ej : j.at("edges")) {
                g.edges.push_back(Edge{ej.at("source").get<std::size_t>(), ej.at("target").get<std::size_t>(),
                                       relation_from(ej)});
            }
            g.validate();
            seq.graphs.emplace_back(std::move(g));
        } catch (const std::exception& e) {
            throw std::invalid_argument("graph line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return seq;
}

std::string segmentation_json(const Segmentation& s)
{
    json doc;
    doc["ius"] = json::array();
    for (const auto& iu : s.ius) {
        json j;
        j["index"] = iu.index;
        j["first"] = iu.first;
        j["last"] = iu.last;
        j["kind"] = to_string(iu.kind);
        if (iu.repr) {
            j["target"] = iu.target();
            j["topology"] = to_string(iu.repr->topology());
            j["repr_frame"] = iu.repr->frame;
            if (const Node* b = iu.repr->background()) {
                j["background"] = b->id;
                j["complexity"] = iu.repr->oo_edge()->relation.interaction_complexity;
            }
        }
        doc["ius"].push_back(std::move(j));
    }
    doc["activities"] = json::array();
    for (const auto& a : s.activities) {
        json j;
        j["index"] = a.index;
        j["first"] = a.first;
        j["last"] = a.last;
        j["target"] = a.target();
        j["ius"] = json::array();
        for (const auto& iu : a.ius) {
            j["ius"].push_back(iu.index);
        }
        doc["activities"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string timeline_csv(const Segmentation& s)
{
    std::ostringstream out;
    out << "frame,iu,kind,activity\n";
    for (const auto& iu : s.ius) {
        int activity = -1;
        for (const auto& a : s.activities) {
            if (iu.first >= a.first && iu.last <= a.last) {
                activity = a.index;
            }
        }
        for (Frame k = iu.first; k <= iu.last; ++k) {
            out << k << ',' << iu.index << ',' << to_string(iu.kind) << ',' << activity << '\n';
        }
    }
    return out.str();
}

std::string primitives_json(const std::vector<ActivityPlan>& plans)
{
    json doc;
    doc["activities"] = json::array();
    for (const auto& a : plans) {
        json j;
        j["activity"] = a.activity;
        j["first"] = a.first;
        j["last"] = a.last;
        j["primitives"] = json::array();
        for (const auto& p : a.primitives) {
            j["primitives"].push_back(primitive_json(p));
        }
        doc["activities"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::vector<ActivityPlan> parse_primitives_json(const std::string& text)
{
    std::vector<ActivityPlan> out;
    try {
        const json doc = json::parse(text);
        for (const auto& j : doc.at("activities")) {
            ActivityPlan a;
            a.activity = j.at("activity").get<int>();
            a.first = j.at("first").get<Frame>();
            a.last = j.at("last").get<Frame>();
            for (const auto& pj : j.at("primitives")) {
                a.primitives.push_back(primitive_from(pj));
            }
            out.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("primitives document: ") + e.what());
    }
    return out;
}

ObjectConfig parse_object_config(const std::string& text)
{
    ObjectConfig out;
    try {
        const json doc = json::parse(text);
        for (const auto& [id, j] : doc.at("objects").items()) {
            ObjectSettings s;
            if (j.contains("grasp_offset")) {
                s.grasp_offset = to_transform(pose_from(j.at("grasp_offset")));
            }
            if (j.contains("grasp_point")) {
                s.grasp_point = detail::vec3_from(j.at("grasp_point"));
            }
            if (j.contains("move_away")) {
                s.move_away = pose_from(j.at("move_away"));
            }
            out.emplace(id, s);
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("object config: ") + e.what());
    }
    return out;
}

std::string object_config_json(const ObjectConfig& config)
{
    json doc;
    doc["objects"] = json::object();
    for (const auto& [id, s] : config) {
        json j;
        j["grasp_offset"] = pose_json(to_pose(s.grasp_offset));
        j["grasp_point"] = detail::vec3_json(s.grasp_point);
        if (s.move_away) {
            j["move_away"] = pose_json(*s.move_away);
        }
        doc["objects"][id] = std::move(j);
    }
    return doc.dump(2) + "\n";
}

ObjectConfig load_object_config(const std::string& path)
{
    return parse_object_config(detail::read_file(path));
}

} // namespace infoplan
