// infoplan command line: synth, ingest, analyze, graph, segment, plan, replay, run.
#include "infoplan/pipeline.hpp"
#include "infoplan/replay.hpp"
#include "infoplan/scenario.hpp"
#include "infoplan/serialization.hpp"
#include "infoplan/signals.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace infoplan;

namespace {

constexpr int kExitError = 1;
constexpr int kExitVerification = 2;

struct Common {
    std::string config_path;
    std::vector<std::string> overrides;
};

std::optional<std::string> config_source(const Common& c)
{
    if (!c.config_path.empty()) {
        return c.config_path;
    }
    if (const char* env = std::getenv("INFOPLAN_CONFIG"); env != nullptr && *env != '\0') {
        return std::string(env);
    }
    return std::nullopt;
}

std::map<std::string, std::string> parse_overrides(const std::vector<std::string>& items)
{
    std::map<std::string, std::string> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("--set expects key=value, got '" + item + "'");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

PipelineConfig resolve_config(const Common& c)
{
    const auto path = config_source(c);
    PipelineConfig config = path ? load_config(*path) : PipelineConfig{};
    config = apply_overrides(config, parse_overrides(c.overrides));
    config.validate();
    return config;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spill(const std::string& path, const std::string& text)
{
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) {
        fs::create_directories(parent);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

void add_common(CLI::App* app, Common& c)
{
    app->add_option("--config", c.config_path, "Config file (default: $INFOPLAN_CONFIG)");
    app->add_option("--set", c.overrides, "Override a config key, key=value")->take_all();
}

GraphSequence read_graphs(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return read_graphs_jsonl(in);
}

int synth(const std::string& tmpl, std::uint64_t seed, double sigma, bool no_jitter, const std::string& format,
          const Common& common, const std::string& out)
{
    ScenarioSpec spec;
    spec.tmpl = template_from_string(tmpl);
    spec.seed = seed;
    spec.noise_sigma = sigma;
    spec.jitter = !no_jitter;
    spec.config = resolve_config(common);
    const Scenario sc = generate_scenario(spec);
    fs::create_directories(out);
    const std::string rec = (fs::path(out) / ("recording." + format)).string();
    save_recording(rec, sc.recording, recording_format_from_path(rec));
    spill((fs::path(out) / "truth.json").string(), truth_json(sc.truth));
    spill((fs::path(out) / "objects.json").string(), object_config_json(sc.truth.objects));
    WorldState scene;
    scene.objects = sc.truth.initial_scene;
    scene.effector = sc.recording.pose(sc.truth.hand, 0);
    spill((fs::path(out) / "scene.json").string(), scene_json(scene));
    std::cout << to_string(spec.tmpl) << ": " << sc.recording.duration() << " frames, "
              << sc.recording.tracks().size() << " elements -> " << out << "\n";
    return 0;
}

int ingest(const std::string& input, const Common& common, const std::string& out)
{
    const Recording rec = load_recording(input, resolve_config(common));
    std::cout << input << ": " << rec.duration() << " frames at " << rec.sample_rate() << " Hz, offset "
              << rec.frame_offset() << "\n";
    for (const auto& t : rec.tracks()) {
        std::size_t present = 0;
        for (const auto& p : t.poses) {
            present += p ? 1 : 0;
        }
        std::cout << "  " << t.element.id << (t.element == rec.hand() ? " (hand)" : "") << ": " << present << " frames\n";
    }
    if (!out.empty()) {
        save_recording(out, rec, recording_format_from_path(out));
    }
    return 0;
}

int analyze(const std::string& input, const std::vector<std::string>& stats, const std::string& a,
            const std::string& b, const Common& common, const std::string& out)
{
    const PipelineConfig config = resolve_config(common);
    const Recording rec = load_recording(input, config);
    fs::create_directories(out);
    for (const auto& name : stats) {
        const Statistic s = statistic_from_string(name);
        SignalSelector sel{a, b.empty() ? std::nullopt : std::optional<std::string>(b)};
        if (s != Statistic::Entropy && !sel.b) {
            throw std::invalid_argument("statistic '" + name + "' needs --b");
        }
        const TimeSeries ts = sliding_series(rec, sel, config.window_samples, s, config);
        std::ostringstream csv;
        csv.precision(12);
        csv << "frame,value\n";
        for (std::size_t i = 0; i < ts.values.size(); ++i) {
            if (!std::isnan(ts.values[i])) {
                csv << ts.start_frame + static_cast<Frame>(i) << ',' << ts.values[i] << '\n';
            }
        }
        const std::string file = to_string(s) + "_" + a + (sel.b ? "_" + *sel.b : "") + ".csv";
        spill((fs::path(out) / file).string(), csv.str());
        std::cout << (fs::path(out) / file).string() << "\n";
    }
    return 0;
}

int graph(const std::string& input, const Common& common, const std::string& out)
{
    const PipelineConfig config = resolve_config(common);
    const Recording rec = load_recording(input, config);
    SignalBank bank(rec, config);
    std::ostringstream text;
    write_graphs_jsonl(text, build_graph_sequence(bank));
    spill(out, text.str());
    return 0;
}

int segment_cmd(const std::string& input, const std::string& timeline, const Common& common, const std::string& out)
{
    const Segmentation seg = segment(read_graphs(input), resolve_config(common));
    spill(out, segmentation_json(seg));
    if (!timeline.empty()) {
        spill(timeline, timeline_csv(seg));
    }
    std::cout << seg.ius.size() << " IUs, " << seg.activities.size() << " activities\n";
    return 0;
}

int plan(const std::string& input, const std::string& objects_path, const std::string& primitives,
         const std::string& dot, const Common& common, const std::string& out)
{
    const Segmentation seg = segment(read_graphs(input), resolve_config(common));
    const ObjectConfig objects = objects_path.empty() ? ObjectConfig{} : load_object_config(objects_path);
    const auto plans = plan_activities(seg.activities, objects);
    if (!primitives.empty()) {
        spill(primitives, primitives_json(plans));
    }
    const BTNode root = build_bt(plans);
    spill(out, serialize_plan(root));
    if (!dot.empty()) {
        spill(dot, to_dot(root));
    }
    std::cout << root.children.size() << " sequences, " << root.leaf_count() << " leaves\n";
    return 0;
}

int replay(const std::string& plan_path, const std::string& scene_path, const std::string& objects_path,
           bool yaw_only, double pos_tol, double yaw_tol, const std::string& out)
{
    const BTNode root = load_plan(plan_path);
    const WorldState initial = parse_scene(slurp(scene_path));
    const ObjectConfig objects = objects_path.empty() ? ObjectConfig{} : load_object_config(objects_path);
    ReplayOptions options;
    options.yaw_only = yaw_only;
    const auto [final_state, trace] = execute_bt(root, initial, objects, options);
    const auto report = verify_relative_poses(final_state, placements_from_plan(root), pos_tol, yaw_tol);
    const std::string text = trace_json(trace, report);
    if (out.empty()) {
        std::cout << text;
    } else {
        spill(out, text);
    }
    std::cerr << "result " << to_string(trace.result) << ", verification " << (report.pass ? "pass" : "fail") << "\n";
    return trace.result == Status::Success && report.pass ? 0 : kExitVerification;
}

int run(const std::vector<std::string>& inputs, const std::string& objects_path, const Common& common,
        const std::string& out)
{
    auto one = [&](const std::string& input, const std::string& dir) {
        PipelineInputs in;
        in.recording_path = input;
        in.config_path = config_source(common);
        if (!objects_path.empty()) {
            in.objects_path = objects_path;
        }
        in.overrides = parse_overrides(common.overrides);
        in.out_dir = dir;
        return run_pipeline(in);
    };
    if (inputs.size() == 1) {
        const RunManifest m = one(inputs.front(), out);
        std::cout << m.activities << " activities, " << m.leaves << " leaves -> " << out << "\n";
        return 0;
    }
    // Batch: one output directory per recording stem, recordings in parallel.
    // Repeated stems get their position prepended.
    std::map<std::string, int> seen;
    for (const auto& input : inputs) {
        ++seen[fs::path(input).stem().string()];
    }
    std::vector<std::future<RunManifest>> jobs;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        std::string name = fs::path(inputs[i]).stem().string();
        if (seen[name] > 1) {
            name = std::to_string(i + 1) + "_" + name;
        }
        jobs.push_back(std::async(std::launch::async, one, inputs[i], (fs::path(out) / name).string()));
    }
    int status = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        try {
            const RunManifest m = jobs[i].get();
            std::cout << inputs[i] << ": " << m.activities << " activities, " << m.leaves << " leaves\n";
        } catch (const std::exception& e) {
            std::cerr << inputs[i] << ": " << e.what() << "\n";
            status = kExitError;
        }
    }
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Compile hand-object demonstrations into behavior-tree plans"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    int status = 0;

    Common common;
    std::string input;
    std::string out;

    std::string tmpl = "pick_and_place";
    std::uint64_t seed = 0;
    double sigma = 0.0;
    bool no_jitter = false;
    std::string format = "jsonl";
    auto* synth_cmd = app.add_subcommand("synth", "Generate a scripted demonstration with ground truth");
    synth_cmd->add_option("--template", tmpl, "Scenario template")->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (auto t : all_templates()) {
            names.push_back(to_string(t));
        }
        return names;
    }()));
    synth_cmd->add_option("--seed", seed, "Layout and timing seed (0 = nominal)");
    synth_cmd->add_option("--sigma", sigma, "Gaussian position noise, m")->check(CLI::NonNegativeNumber);
    synth_cmd->add_flag("--no-jitter", no_jitter, "Keep the nominal layout for every seed");
    synth_cmd->add_option("--format", format, "Recording format")->check(CLI::IsMember({"jsonl", "csv"}));
    synth_cmd->add_option("--out", out, "Output directory")->required();
    add_common(synth_cmd, common);
    synth_cmd->callback([&] { status = synth(tmpl, seed, sigma, no_jitter, format, common, out); });

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a pose log and optionally rewrite it gap-filled");
    ingest_cmd->add_option("recording", input)->required()->check(CLI::ExistingFile);
    ingest_cmd->add_option("--out", out, "Normalized recording (.jsonl or .csv)");
    add_common(ingest_cmd, common);
    ingest_cmd->callback([&] { status = ingest(input, common, out); });

    std::vector<std::string> stats;
    std::string a;
    std::string b;
    auto* analyze_cmd = app.add_subcommand("analyze", "Windowed statistics as frame,value CSV files");
    analyze_cmd->add_option("recording", input)->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--stat", stats, "entropy, mi, avg_distance, entropy_of_distance")->required();
    analyze_cmd->add_option("--a", a, "Element id")->required();
    analyze_cmd->add_option("--b", b, "Second element id for pair statistics");
    analyze_cmd->add_option("--out", out, "Output directory")->required();
    add_common(analyze_cmd, common);
    analyze_cmd->callback([&] { status = analyze(input, stats, a, b, common, out); });

    auto* graph_cmd = app.add_subcommand("graph", "Scene graph sequence as JSONL");
    graph_cmd->add_option("recording", input)->required()->check(CLI::ExistingFile);
    graph_cmd->add_option("--out", out, "graphs.jsonl")->required();
    add_common(graph_cmd, common);
    graph_cmd->callback([&] { status = graph(input, common, out); });

    std::string timeline;
    auto* segment_cmd_ = app.add_subcommand("segment", "Interaction units and activities");
    segment_cmd_->add_option("graphs", input)->required()->check(CLI::ExistingFile);
    segment_cmd_->add_option("--out", out, "segmentation.json")->required();
    segment_cmd_->add_option("--timeline", timeline, "Per-frame timeline CSV");
    add_common(segment_cmd_, common);
    segment_cmd_->callback([&] { status = segment_cmd(input, timeline, common, out); });

    std::string objects;
    std::string primitives;
    std::string dot;
    auto* plan_cmd = app.add_subcommand("plan", "Behavior tree plan from a graph sequence");
    plan_cmd->add_option("graphs", input)->required()->check(CLI::ExistingFile);
    plan_cmd->add_option("--objects", objects, "Per-object grasp settings")->check(CLI::ExistingFile);
    plan_cmd->add_option("--primitives", primitives, "Also write the primitive list");
    plan_cmd->add_option("--dot", dot, "Also write a Graphviz rendering");
    plan_cmd->add_option("--out", out, "plan.json")->required();
    add_common(plan_cmd, common);
    plan_cmd->callback([&] { status = plan(input, objects, primitives, dot, common, out); });

    std::string scene;
    bool yaw_only = false;
    double pos_tol = 1e-6;
    double yaw_tol = 1e-6;
    auto* replay_cmd = app.add_subcommand("replay", "Execute a plan kinematically and verify placements");
    replay_cmd->add_option("plan", input)->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--scene", scene, "Initial poses")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--objects", objects, "Per-object grasp settings")->check(CLI::ExistingFile);
    replay_cmd->add_flag("--yaw-only", yaw_only, "Drop roll and pitch from resolved targets");
    replay_cmd->add_option("--position-tolerance", pos_tol, "m")->check(CLI::NonNegativeNumber);
    replay_cmd->add_option("--yaw-tolerance", yaw_tol, "rad")->check(CLI::NonNegativeNumber);
    replay_cmd->add_option("--out", out, "trace.json (default: stdout)");
    replay_cmd->callback([&] { status = replay(input, scene, objects, yaw_only, pos_tol, yaw_tol, out); });

    std::vector<std::string> inputs;
    auto* run_cmd = app.add_subcommand("run", "All stages with a manifest; several recordings run in parallel");
    run_cmd->add_option("recordings", inputs)->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--objects", objects, "Per-object grasp settings")->check(CLI::ExistingFile);
    run_cmd->add_option("--out", out, "Output directory")->required();
    add_common(run_cmd, common);
    run_cmd->callback([&] { status = run(inputs, objects, common, out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return status;
}
