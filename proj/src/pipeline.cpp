#include "infoplan/pipeline.hpp"

#include "infoplan/serialization.hpp"
#include "json_util.hpp"

#include <filesystem>
#include <iomanip>
#include <sstream>

namespace infoplan {

namespace {

template <typename F>
auto stage(const char* name, F&& f)
{
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("stage '") + name + "': " + e.what());
    }
}

} // namespace

std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

PipelineResult run_in_memory(const Recording& recording, const PipelineConfig& config, const ObjectConfig& objects)
{
    PipelineResult r;
    SignalBank bank(recording, config);
    r.graphs = stage("graph", [&] { return build_graph_sequence(bank); });
    r.segmentation = stage("segment", [&] { return segment(r.graphs, config); });
    r.plans = stage("primitives", [&] { return plan_activities(r.segmentation.activities, objects); });
    if (!r.plans.empty()) {
        r.plan = stage("plan", [&] { return build_bt(r.plans); });
    }
    return r;
}

std::string RunManifest::to_json() const
{
    nlohmann::json doc;
    doc["tool"] = "infoplan";
    doc["version"] = tool_version;
    doc["config"] = config;
    for (const auto& [role, entry] : inputs) {
        doc["inputs"][role] = {{"path", entry.first}, {"fnv1a64", entry.second}};
    }
    for (const auto& [name, entry] : outputs) {
        doc["outputs"][name] = {{"path", entry.first}, {"fnv1a64", entry.second}};
    }
    doc["summary"] = {{"activities", activities}, {"leaves", leaves}};
    return doc.dump(2) + "\n";
}

RunManifest run_pipeline(const PipelineInputs& in)
{
    namespace fs = std::filesystem;
    RunManifest m;
    const PipelineConfig config = stage("config", [&] {
        PipelineConfig c = in.config_path ? load_config(*in.config_path) : PipelineConfig{};
        c = apply_overrides(c, in.overrides);
        c.validate();
        return c;
    });
    m.config = serialize_config(config);
    if (in.config_path) {
        m.inputs["config"] = {*in.config_path, fnv1a_hex(detail::read_file(*in.config_path))};
    }
    const ObjectConfig objects = stage("objects", [&] {
        return in.objects_path ? load_object_config(*in.objects_path) : ObjectConfig{};
    });
    if (in.objects_path) {
        m.inputs["objects"] = {*in.objects_path, fnv1a_hex(detail::read_file(*in.objects_path))};
    }
    const Recording recording = stage("ingest", [&] {
        Recording r = load_recording(in.recording_path, config);
        if (r.duration() == 0) {
            throw std::invalid_argument("recording is empty");
        }
        return r;
    });
    m.inputs["recording"] = {in.recording_path, fnv1a_hex(detail::read_file(in.recording_path))};

    const PipelineResult result = run_in_memory(recording, config, objects);
    if (!result.plan) {
        throw std::runtime_error("stage 'plan': no activity detected");
    }

    fs::create_directories(in.out_dir);
    auto emit = [&](const std::string& name, const std::string& file, const std::string& text) {
        const std::string path = (fs::path(in.out_dir) / file).string();
        detail::write_file(path, text);
        m.outputs[name] = {file, fnv1a_hex(text)};
    };
    std::ostringstream graphs;
    write_graphs_jsonl(graphs, result.graphs);
    emit("graphs", "graphs.jsonl", graphs.str());
    emit("segmentation", "segmentation.json", segmentation_json(result.segmentation));
    emit("primitives", "primitives.json", primitives_json(result.plans));
    emit("plan", "plan.json", serialize_plan(*result.plan));
    m.activities = result.segmentation.activities.size();
    m.leaves = result.plan->leaf_count();
    detail::write_file((fs::path(in.out_dir) / "manifest.json").string(), m.to_json());
    return m;
}

} // namespace infoplan
