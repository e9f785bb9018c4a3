#include "infoplan/recording.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace infoplan {

namespace {

constexpr double kQuaternionTolerance = 1e-6;

[[noreturn]] void fail_line(int line_no, const std::string& message)
{
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + message);
}

Pose6D make_pose(int line_no, double px, double py, double pz, double qx, double qy, double qz, double qw)
{
    for (double v : {px, py, pz, qx, qy, qz, qw}) {
        if (!std::isfinite(v)) {
            fail_line(line_no, "non-finite pose value");
        }
    }
    const double norm = std::sqrt(qx * qx + qy * qy + qz * qz + qw * qw);
    if (std::abs(norm - 1.0) > kQuaternionTolerance) {
        fail_line(line_no, "quaternion is not unit length (norm " + std::to_string(norm) + ")");
    }
    return Pose6D(Eigen::Vector3d(px, py, pz), Eigen::Quaterniond(qw, qx, qy, qz));
}

Frame frame_from_json(int line_no, const nlohmann::json& row, double sample_rate)
{
    if (row.contains("k")) {
        const auto& k = row.at("k");
        if (!k.is_number_integer()) {
            fail_line(line_no, "\"k\" must be an integer");
        }
        return k.get<Frame>();
    }
    if (row.contains("t")) {
        const auto& t = row.at("t");
        if (!t.is_number()) {
            fail_line(line_no, "\"t\" must be a number");
        }
        return static_cast<Frame>(std::llround(t.get<double>() * sample_rate));
    }
    fail_line(line_no, "row has neither \"k\" nor \"t\"");
}

std::array<double, 3> vec3_from_json(int line_no, const nlohmann::json& row, const char* key, std::size_t size)
{
    if (!row.contains(key) || !row.at(key).is_array() || row.at(key).size() != size) {
        fail_line(line_no, std::string("\"") + key + "\" must be an array of " + std::to_string(size) + " numbers");
    }
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3 && i < size; ++i) {
        if (!row.at(key)[i].is_number()) {
            fail_line(line_no, std::string("\"") + key + "\" holds a non-number");
        }
        out[i] = row.at(key)[i].get<double>();
    }
    return out;
}

std::vector<PoseRow> parse_jsonl_rows(std::istream& in, double sample_rate)
{
    std::vector<PoseRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        nlohmann::json row;
        try {
            row = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            fail_line(line_no, std::string("malformed JSON: ") + e.what());
        }
        if (!row.is_object()) {
            fail_line(line_no, "expected a JSON object");
        }
        if (!row.contains("id") || !row.at("id").is_string()) {
            fail_line(line_no, "missing string \"id\"");
        }
        if (!row.contains("kind") || !row.at("kind").is_string()) {
            fail_line(line_no, "missing string \"kind\"");
        }
        PoseRow r;
        r.frame = frame_from_json(line_no, row, sample_rate);
        r.element.id = row.at("id").get<std::string>();
        try {
            r.element.kind = element_kind_from_string(row.at("kind").get<std::string>());
        } catch (const std::invalid_argument& e) {
            fail_line(line_no, e.what());
        }
        const auto p = vec3_from_json(line_no, row, "p", 3);
        if (!row.contains("q") || !row.at("q").is_array() || row.at("q").size() != 4) {
            fail_line(line_no, "\"q\" must be an array of 4 numbers");
        }
        std::array<double, 4> q{};
        for (std::size_t i = 0; i < 4; ++i) {
            if (!row.at("q")[i].is_number()) {
                fail_line(line_no, "\"q\" holds a non-number");
            }
            q[i] = row.at("q")[i].get<double>();
        }
        r.pose = make_pose(line_no, p[0], p[1], p[2], q[0], q[1], q[2], q[3]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        const auto b = field.find_first_not_of(" \t\r");
        const auto e = field.find_last_not_of(" \t\r");
        fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double csv_number(int line_no, const std::string& text)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        fail_line(line_no, "not a number: '" + text + "'");
    }
    if (used != text.size()) {
        fail_line(line_no, "not a number: '" + text + "'");
    }
    return v;
}

std::vector<PoseRow> parse_csv_rows(std::istream& in)
{
    std::vector<PoseRow> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto fields = split_csv(line);
        if (line_no == 1 && !fields.empty() && fields[0] == "frame") {
            continue;
        }
        if (fields.size() != 10) {
            fail_line(line_no, "expected 10 columns (frame,id,kind,px,py,pz,qx,qy,qz,qw), got " +
                                   std::to_string(fields.size()));
        }
        PoseRow r;
        const double frame = csv_number(line_no, fields[0]);
        if (frame != std::floor(frame)) {
            fail_line(line_no, "frame must be an integer");
        }
        r.frame = static_cast<Frame>(frame);
        if (fields[1].empty()) {
            fail_line(line_no, "empty id");
        }
        r.element.id = fields[1];
        try {
            r.element.kind = element_kind_from_string(fields[2]);
        } catch (const std::invalid_argument& e) {
            fail_line(line_no, e.what());
        }
        std::array<double, 7> v{};
        for (std::size_t i = 0; i < 7; ++i) {
            v[i] = csv_number(line_no, fields[3 + i]);
        }
        r.pose = make_pose(line_no, v[0], v[1], v[2], v[3], v[4], v[5], v[6]);
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace

RecordingFormat recording_format_from_path(const std::string& path)
{
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".csv")) {
        return RecordingFormat::Csv;
    }
    if (ends_with(".jsonl") || ends_with(".json")) {
        return RecordingFormat::Jsonl;
    }
    throw std::invalid_argument("cannot infer recording format from '" + path + "' (use .jsonl or .csv)");
}

Recording::Recording(double sample_rate, Frame duration, std::vector<Track> tracks, Frame frame_offset)
    : sample_rate_(sample_rate), duration_(duration), frame_offset_(frame_offset), tracks_(std::move(tracks))
{
    std::sort(tracks_.begin(), tracks_.end(),
              [](const Track& a, const Track& b) { return a.element.id < b.element.id; });
    int hands = 0;
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
        if (tracks_[i].poses.size() != static_cast<std::size_t>(duration_)) {
            throw std::invalid_argument("track '" + tracks_[i].element.id + "' does not span the recording");
        }
        if (!index_.emplace(tracks_[i].element.id, i).second) {
            throw std::invalid_argument("duplicate element id '" + tracks_[i].element.id + "'");
        }
        if (tracks_[i].element.kind == ElementKind::Hand) {
            ++hands;
            hand_index_ = i;
        }
    }
    if (hands != 1) {
        throw std::invalid_argument("recording must contain exactly one hand, found " + std::to_string(hands));
    }
}

const Track& Recording::track(const std::string& id) const
{
    const auto it = index_.find(id);
    if (it == index_.end()) {
        throw std::out_of_range("unknown element '" + id + "'");
    }
    return tracks_[it->second];
}

const ElementId& Recording::hand() const
{
    return tracks_.at(hand_index_).element;
}

std::vector<ElementId> Recording::objects() const
{
    std::vector<ElementId> out;
    for (const auto& t : tracks_) {
        if (t.element.kind == ElementKind::Object) {
            out.push_back(t.element);
        }
    }
    return out;
}

bool Recording::present(const std::string& id, Frame k) const
{
    if (k < 0 || k >= duration_) {
        return false;
    }
    return track(id).poses[static_cast<std::size_t>(k)].has_value();
}

bool Recording::present_over(const std::string& id, Frame first, Frame last) const
{
    if (first < 0 || last >= duration_ || first > last) {
        return false;
    }
    const auto& poses = track(id).poses;
    for (Frame k = first; k <= last; ++k) {
        if (!poses[static_cast<std::size_t>(k)]) {
            return false;
        }
    }
    return true;
}

const Pose6D& Recording::pose(const std::string& id, Frame k) const
{
    if (k < 0 || k >= duration_) {
        throw std::out_of_range("frame " + std::to_string(k) + " outside recording");
    }
    const auto& p = track(id).poses[static_cast<std::size_t>(k)];
    if (!p) {
        throw std::out_of_range("element '" + id + "' absent at frame " + std::to_string(k));
    }
    return *p;
}

Recording Recording::without(const std::string& id) const
{
    if (id == hand().id) {
        throw std::invalid_argument("cannot remove the hand");
    }
    std::vector<Track> kept;
    for (const auto& t : tracks_) {
        if (t.element.id != id) {
            kept.push_back(t);
        }
    }
    return Recording(sample_rate_, duration_, std::move(kept), frame_offset_);
}

bool Recording::operator==(const Recording& other) const
{
    if (sample_rate_ != other.sample_rate_ || duration_ != other.duration_ || frame_offset_ != other.frame_offset_ ||
        tracks_.size() != other.tracks_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < tracks_.size(); ++i) {
        const auto& a = tracks_[i];
        const auto& b = other.tracks_[i];
        if (a.element.id != b.element.id || a.element.kind != b.element.kind || a.poses != b.poses) {
            return false;
        }
    }
    return true;
}

Recording assemble_recording(std::vector<PoseRow> rows, double sample_rate, int max_gap_frames)
{
    if (rows.empty()) {
        throw std::runtime_error("recording has no pose rows");
    }
    if (max_gap_frames < 0) {
        throw std::invalid_argument("max_gap_frames must be >= 0");
    }
    std::stable_sort(rows.begin(), rows.end(), [](const PoseRow& a, const PoseRow& b) {
        return a.element.id != b.element.id ? a.element.id < b.element.id : a.frame < b.frame;
    });
    Frame first = rows.front().frame;
    Frame last = rows.front().frame;
    for (const auto& r : rows) {
        first = std::min(first, r.frame);
        last = std::max(last, r.frame);
    }
    const Frame duration = last - first + 1;

    std::vector<Track> tracks;
    for (std::size_t i = 0; i < rows.size();) {
        Track track;
        track.element = rows[i].element;
        track.poses.assign(static_cast<std::size_t>(duration), std::nullopt);
        std::optional<Frame> prev;
        for (; i < rows.size() && rows[i].element.id == track.element.id; ++i) {
            const auto& r = rows[i];
            if (r.element.kind != track.element.kind) {
                throw std::runtime_error("element '" + r.element.id + "' changes kind");
            }
            const Frame k = r.frame - first;
            if (prev && *prev == k) {
                throw std::runtime_error("duplicate row for element '" + r.element.id + "' at frame " +
                                         std::to_string(r.frame));
            }
            if (prev && k - *prev - 1 <= max_gap_frames) {
                const Pose6D held = *track.poses[static_cast<std::size_t>(*prev)];
                for (Frame g = *prev + 1; g < k; ++g) {
                    track.poses[static_cast<std::size_t>(g)] = held;
                }
            }
            track.poses[static_cast<std::size_t>(k)] = r.pose;
            prev = k;
        }
        tracks.push_back(std::move(track));
    }
    return Recording(sample_rate, duration, std::move(tracks), first);
}

Recording parse_recording(std::istream& in, RecordingFormat format, double sample_rate, int max_gap_frames)
{
    auto rows = format == RecordingFormat::Jsonl ? parse_jsonl_rows(in, sample_rate) : parse_csv_rows(in);
    return assemble_recording(std::move(rows), sample_rate, max_gap_frames);
}

Recording load_recording(const std::string& path, RecordingFormat format, const PipelineConfig& config)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open recording '" + path + "'");
    }
    try {
        return parse_recording(in, format, config.sample_rate, config.max_gap_frames);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Recording load_recording(const std::string& path, const PipelineConfig& config)
{
    return load_recording(path, recording_format_from_path(path), config);
}

void write_recording(std::ostream& out, const Recording& recording, RecordingFormat format)
{
    out << std::setprecision(17);
    if (format == RecordingFormat::Csv) {
        out << "frame,id,kind,px,py,pz,qx,qy,qz,qw\n";
    }
    for (Frame k = 0; k < recording.duration(); ++k) {
        for (const auto& track : recording.tracks()) {
            const auto& p = track.poses[static_cast<std::size_t>(k)];
            if (!p) {
                continue;
            }
            const Frame frame = k + recording.frame_offset();
            const auto& pos = p->position;
            const auto& q = p->orientation;
            if (format == RecordingFormat::Csv) {
                out << frame << ',' << track.element.id << ',' << to_string(track.element.kind) << ',' << pos.x()
                    << ',' << pos.y() << ',' << pos.z() << ',' << q.x() << ',' << q.y() << ',' << q.z() << ','
                    << q.w() << '\n';
            } else {
                nlohmann::json row;
                row["k"] = frame;
                row["id"] = track.element.id;
                row["kind"] = to_string(track.element.kind);
                row["p"] = {pos.x(), pos.y(), pos.z()};
                row["q"] = {q.x(), q.y(), q.z(), q.w()};
                out << row.dump() << '\n';
            }
        }
    }
}

void save_recording(const std::string& path, const Recording& recording, RecordingFormat format)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write recording '" + path + "'");
    }
    write_recording(out, recording, format);
}

double instantaneous_distance(const Recording& recording, const std::string& a, const std::string& b, Frame k,
                              const std::vector<Axis>& axes)
{
    const auto& pa = recording.pose(a, k).position;
    const auto& pb = recording.pose(b, k).position;
    double sq = 0;
    for (Axis axis : axes) {
        const double d = pa[static_cast<int>(axis)] - pb[static_cast<int>(axis)];
        sq += d * d;
    }
    return std::sqrt(sq);
}

double average_distance(const Recording& recording, const std::string& a, const std::string& b, Frame t, int w,
                        const std::vector<Axis>& axes)
{
    const Frame first = t - w / 2;
    const Frame last = t + w / 2 - 1;
    if (first < 0 || t + w / 2 >= recording.duration()) {
        throw std::out_of_range("window around frame " + std::to_string(t) + " leaves the recording");
    }
    if (!recording.present_over(a, first, last) || !recording.present_over(b, first, last)) {
        throw std::out_of_range("element absent inside the window around frame " + std::to_string(t));
    }
    double sum = 0;
    for (Frame k = first; k <= last; ++k) {
        sum += instantaneous_distance(recording, a, b, k, axes);
    }
    return sum / static_cast<double>(last - first + 1);
}

} // namespace infoplan
