#pragma once

#include "infoplan/config.hpp"
#include "infoplan/types.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infoplan {

enum class RecordingFormat { Jsonl, Csv };

RecordingFormat recording_format_from_path(const std::string& path);

/// One element's poses on every frame of the recording; std::nullopt marks
/// frames where the element is absent (never observed, or a gap longer than
/// max_gap_frames).
struct Track {
    ElementId element;
    std::vector<std::optional<Pose6D>> poses;
};

/// Gap-filled pose tracks. Frames are rebased so the earliest row is frame 0;
/// `frame_offset` keeps the original index of that row.
class Recording {
public:
    Recording() = default;
    Recording(double sample_rate, Frame duration, std::vector<Track> tracks, Frame frame_offset = 0);

    double sample_rate() const { return sample_rate_; }
    Frame duration() const { return duration_; }
    Frame frame_offset() const { return frame_offset_; }

    const std::vector<Track>& tracks() const { return tracks_; }
    const Track& track(const std::string& id) const;
    bool has_element(const std::string& id) const { return index_.count(id) != 0; }

    const ElementId& hand() const;
    std::vector<ElementId> objects() const;

    bool present(const std::string& id, Frame k) const;
    /// True when the element is present on every frame of [first, last].
    bool present_over(const std::string& id, Frame first, Frame last) const;
    const Pose6D& pose(const std::string& id, Frame k) const;

    /// Returns a copy without the named element (scene-edit helper).
    Recording without(const std::string& id) const;

    bool operator==(const Recording& other) const;

private:
    double sample_rate_ = 30.0;
    Frame duration_ = 0;
    Frame frame_offset_ = 0;
    std::vector<Track> tracks_;
    std::map<std::string, std::size_t> index_;
    std::size_t hand_index_ = 0;
};

/// One raw pose row as it appears on disk.
struct PoseRow {
    Frame frame = 0;
    ElementId element;
    Pose6D pose;
};

/// Builds a Recording from raw rows: validates ids and quaternions, sorts by
/// frame, fills gaps up to `max_gap_frames` with the last observed pose.
Recording assemble_recording(std::vector<PoseRow> rows, double sample_rate, int max_gap_frames);

Recording parse_recording(std::istream& in, RecordingFormat format, double sample_rate, int max_gap_frames);
Recording load_recording(const std::string& path, RecordingFormat format, const PipelineConfig& config);
Recording load_recording(const std::string& path, const PipelineConfig& config);

/// Writes every present frame of every track (filled frames included), so a
/// reload reproduces the same Recording.
void write_recording(std::ostream& out, const Recording& recording, RecordingFormat format);
void save_recording(const std::string& path, const Recording& recording, RecordingFormat format);

/// Mean over the w frames [t - w/2, t + w/2 - 1] of the Euclidean distance between `a` and `b`
/// restricted to `axes`.
double average_distance(const Recording& recording, const std::string& a, const std::string& b, Frame t, int w,
                        const std::vector<Axis>& axes);

/// Distance at a single frame restricted to `axes`.
double instantaneous_distance(const Recording& recording, const std::string& a, const std::string& b, Frame k,
                              const std::vector<Axis>& axes);

} // namespace infoplan
