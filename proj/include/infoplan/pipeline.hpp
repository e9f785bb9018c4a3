#pragma once

#include "infoplan/behavior_tree.hpp"
#include "infoplan/recording.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infoplan {

inline constexpr const char* kToolVersion = "0.1.0";

/// Everything the pipeline derives from one recording.
struct PipelineResult {
    GraphSequence graphs;
    Segmentation segmentation;
    std::vector<ActivityPlan> plans;
    /// Absent when no activity was detected.
    std::optional<BTNode> plan;
};

/// Graph detection, segmentation, primitive mapping and BT assembly. Stage
/// failures are rethrown as std::runtime_error prefixed with the stage name.
PipelineResult run_in_memory(const Recording& recording, const PipelineConfig& config, const ObjectConfig& objects);

struct PipelineInputs {
    std::string recording_path;
    std::optional<std::string> config_path;
    std::optional<std::string> objects_path;
    std::map<std::string, std::string> overrides;
    std::string out_dir;
};

struct RunManifest {
    std::string tool_version = kToolVersion;
    std::string config;
    /// Input role -> (path, FNV-1a 64 hash of the bytes).
    std::map<std::string, std::pair<std::string, std::string>> inputs;
    /// Stage -> (path, hash).
    std::map<std::string, std::pair<std::string, std::string>> outputs;
    std::size_t activities = 0;
    std::size_t leaves = 0;

    std::string to_json() const;
};

/// Runs every stage from files and writes graphs.jsonl, segmentation.json,
/// primitives.json, plan.json and manifest.json into out_dir.
RunManifest run_pipeline(const PipelineInputs& inputs);

/// 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

} // namespace infoplan
