#pragma once

#include "infoplan/primitives.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace infoplan {

/// One JSON object per frame: {"frame", "nodes", "edges"}. Frames without a
/// graph carry empty node and edge lists.
void write_graphs_jsonl(std::ostream& out, const GraphSequence& graphs);
GraphSequence read_graphs_jsonl(std::istream& in);

std::string segmentation_json(const Segmentation& segmentation);

/// Per-frame CSV: frame,iu,kind,activity (activity -1 outside activities).
std::string timeline_csv(const Segmentation& segmentation);

std::string primitives_json(const std::vector<ActivityPlan>& plans);
std::vector<ActivityPlan> parse_primitives_json(const std::string& text);

/// {"objects": {"<id>": {"grasp_offset": pose, "grasp_point": [x,y,z],
/// "move_away": pose}}}, every field optional.
ObjectConfig parse_object_config(const std::string& text);
std::string object_config_json(const ObjectConfig& config);
ObjectConfig load_object_config(const std::string& path);

} // namespace infoplan
