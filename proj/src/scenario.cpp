#include "infoplan/scenario.hpp"

#include "infoplan/serialization.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace infoplan {

namespace {

struct TemplateName {
    Template tmpl;
    const char* name;
};

constexpr TemplateName kTemplateNames[] = {
    {Template::Relocate, "relocate"},
    {Template::StirAndPlace, "stir_and_place"},
    {Template::CarryAssembly, "carry_assembly"},
    {Template::PickAndPlace, "pick_and_place"},
    {Template::PassByDistractor, "pass_by_distractor"},
    {Template::Cashier, "cashier"},
    {Template::WeighAndBox, "weigh_and_box"},
    {Template::TrayTwoCups, "tray_two_cups"},
    {Template::CleanSurface, "clean_surface"},
};

const std::string kHand = "hand";

/// Hand position relative to the grasped object, in world axes.
const Eigen::Vector3d kGraspOffset(0.03, 0.0, 0.05);

struct ActivityLog {
    std::vector<std::string> grasped;
    Frame attach = 0;
    Frame carry_first = -1;
    Frame carry_last = -1;
    Frame release = 0;
    std::vector<std::string> visits;
    std::vector<bool> complex;
};

/// Scripted kinematics: every call appends frames in which all elements are
/// recorded; the hand drags the attached objects rigidly.
class Script {
public:
    Script(double q, std::mt19937_64* rng) : q_(q), rng_(rng) {}

    void add(const std::string& id, ElementKind kind, double x, double y, double z)
    {
        ids_.push_back(id);
        kinds_[id] = kind;
        current_[id] = Pose6D(Eigen::Vector3d(snap(x), snap(y), z), Eigen::Quaterniond::Identity());
    }

    void shift(double dx, double dy)
    {
        for (auto& [id, p] : current_) {
            p.position += Eigen::Vector3d(dx, dy, 0.0);
        }
    }

    void rotate(const std::string& id, double yaw)
    {
        current_[id].orientation = Eigen::Quaterniond(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));
    }

    Eigen::Vector3d position(const std::string& id) const { return current_.at(id).position; }

    void start() { push(); }

    int jitter(int n)
    {
        if (!rng_) {
            return n;
        }
        return n + std::uniform_int_distribution<int>(-3, 3)(*rng_);
    }

    void idle(int n)
    {
        for (int i = 0; i < n; ++i) {
            push();
        }
    }

    void reach(const std::string& obj, int n)
    {
        current_[kHand].orientation = current_.at(obj).orientation;
        move_hand(current_.at(obj).position + kGraspOffset, n);
    }

    void retreat(const Eigen::Vector3d& delta, int n) { move_hand(current_.at(kHand).position + delta, n); }

    void attach(const std::vector<std::string>& objs)
    {
        attached_ = objs;
        ActivityLog a;
        a.grasped = objs;
        a.attach = now();
        log_.push_back(a);
    }

    void detach()
    {
        log_.back().release = now();
        attached_.clear();
    }

    /// Min-jerk translation of the hand and everything it holds so that the
    /// grasped object ends at `target`.
    void carry_to(const Eigen::Vector3d& target, int n, const std::string& visit = {}, bool complex = false)
    {
        const Eigen::Vector3d delta = target - current_.at(attached_.front()).position;
        displace(n, [&](int i) { return Eigen::Vector3d(delta * minimum_jerk(double(i) / n)); });
        if (!visit.empty()) {
            log_.back().visits.push_back(visit);
            log_.back().complex.push_back(complex);
        }
    }

    void oscillate(const Eigen::Vector3d& direction, double amplitude, int cycles, int period)
    {
        const int n = cycles * period;
        displace(n, [&](int i) {
            if (i == n) {
                return Eigen::Vector3d(Eigen::Vector3d::Zero());
            }
            return Eigen::Vector3d(direction * amplitude * std::sin(2.0 * std::numbers::pi * i / period));
        });
        log_.back().complex.back() = true;
    }

    void circle(double radius, int cycles, int period)
    {
        const int n = cycles * period;
        displace(n, [&](int i) {
            if (i == n) {
                return Eigen::Vector3d(Eigen::Vector3d::Zero());
            }
            const double t = 2.0 * std::numbers::pi * i / period;
            return Eigen::Vector3d(radius * (std::cos(t) - 1.0), radius * std::sin(t), 0.0);
        });
        log_.back().complex.back() = true;
    }

    Frame now() const { return frames_ - 1; }
    double snap(double v) const { return (std::round(v / q_ - 0.5) + 0.5) * q_; }

    const std::vector<std::string>& ids() const { return ids_; }
    const std::map<std::string, ElementKind>& kinds() const { return kinds_; }
    const std::map<std::string, std::vector<Pose6D>>& tracks() const { return tracks_; }
    const std::vector<ActivityLog>& log() const { return log_; }

private:
    void push()
    {
        for (const auto& id : ids_) {
            tracks_[id].push_back(current_.at(id));
        }
        ++frames_;
    }

    void move_hand(const Eigen::Vector3d& target, int n)
    {
        const Eigen::Vector3d start = current_.at(kHand).position;
        for (int i = 1; i <= n; ++i) {
            current_[kHand].position = start + (target - start) * minimum_jerk(double(i) / n);
            push();
        }
    }

    template <typename Offset>
    void displace(int n, Offset offset)
    {
        std::vector<std::string> moving = attached_;
        moving.push_back(kHand);
        std::map<std::string, Eigen::Vector3d> start;
        for (const auto& id : moving) {
            start[id] = current_.at(id).position;
        }
        auto& a = log_.back();
        for (int i = 1; i <= n; ++i) {
            const Eigen::Vector3d d = offset(i);
            for (const auto& id : moving) {
                current_[id].position = start[id] + d;
            }
            push();
            if (a.carry_first < 0) {
                a.carry_first = now();
            }
            a.carry_last = now();
        }
    }

    double q_;
    std::mt19937_64* rng_;
    std::vector<std::string> ids_;
    std::map<std::string, ElementKind> kinds_;
    std::map<std::string, Pose6D> current_;
    std::map<std::string, std::vector<Pose6D>> tracks_;
    std::vector<std::string> attached_;
    std::vector<ActivityLog> log_;
    Frame frames_ = 0;
};

constexpr int kPad = 70;
constexpr int kReach = 40;
constexpr int kDwell = 10;
constexpr int kRetreat = 30;
constexpr int kBetween = 30;
// Placement carries run above 1 bin per frame near their start, which keeps the
// hand-object MI of the closing approach free of histogram sawtooth.
constexpr int kPlace = 60;

const Eigen::Vector3d kRetreatDelta(-0.05, -0.30, 0.10);

Eigen::Vector3d at(const Script& s, const std::string& id, double dx, double dy, double dz = 0.0)
{
    return s.position(id) + Eigen::Vector3d(dx, dy, dz);
}

void hand_home(Script& s, const std::string& first_object)
{
    const Eigen::Vector3d p = s.position(first_object) + Eigen::Vector3d(-0.25, -0.25, 0.15);
    s.add(kHand, ElementKind::Hand, p.x(), p.y(), p.z());
}

/// Reach, grasp, carry through `stops`, release, retreat.
struct Stop {
    Eigen::Vector3d where;
    int frames;
    std::string visit;
    bool complex = false;
};

void pick(Script& s, const std::vector<std::string>& objs)
{
    s.reach(objs.front(), s.jitter(kReach));
    s.attach(objs);
    s.idle(s.jitter(kDwell));
}

void place(Script& s)
{
    s.idle(s.jitter(kDwell));
    s.detach();
    s.retreat(kRetreatDelta, s.jitter(kRetreat));
}

void build_template(Script& s, Template t)
{
    switch (t) {
    case Template::Relocate:
        s.add("cup", ElementKind::Object, 0.20, 0.30, 0.0);
        hand_home(s, "cup");
        break;
    case Template::PickAndPlace:
    case Template::PassByDistractor:
        s.add("cup", ElementKind::Object, 0.20, 0.30, 0.0);
        s.add("plate", ElementKind::Object, 0.80, 0.30, 0.0);
        if (t == Template::PassByDistractor) {
            s.add("distractor", ElementKind::Object, 0.08, 0.30, 0.0);
        }
        hand_home(s, "cup");
        break;
    case Template::CarryAssembly:
        s.add("profile", ElementKind::Object, 0.30, 0.30, 0.0);
        s.add("joint", ElementKind::Object, 0.38, 0.30, 0.0);
        hand_home(s, "profile");
        break;
    case Template::TrayTwoCups:
        s.add("tray", ElementKind::Object, 0.60, 0.50, 0.0);
        s.add("cup1", ElementKind::Object, 0.60, 0.00, 0.0);
        s.add("cup2", ElementKind::Object, 0.60, 1.00, 0.0);
        hand_home(s, "cup1");
        break;
    case Template::WeighAndBox:
        s.add("box", ElementKind::Object, 0.30, 0.60, 0.0);
        s.add("profile_B1", ElementKind::Object, 0.25, 0.67, 0.0);
        s.add("profile_B2", ElementKind::Object, 0.35, 0.67, 0.0);
        s.add("profile_C", ElementKind::Object, 0.42, 0.72, 0.0);
        s.add("scale", ElementKind::Object, 0.85, 0.35, 0.0);
        hand_home(s, "profile_C");
        break;
    case Template::Cashier:
        s.add("bottle", ElementKind::Object, 0.10, 0.30, 0.0);
        s.add("scanner", ElementKind::Object, 0.55, 0.30, 0.0);
        s.add("packing", ElementKind::Object, 1.25, 0.25, 0.0);
        hand_home(s, "bottle");
        break;
    case Template::StirAndPlace:
        s.add("spoon", ElementKind::Object, 0.10, 0.30, 0.0);
        s.add("mug", ElementKind::Object, 0.55, 0.30, 0.0);
        s.add("saucer", ElementKind::Object, 1.25, 0.30, 0.0);
        hand_home(s, "spoon");
        break;
    case Template::CleanSurface:
        s.add("sponge", ElementKind::Object, 0.20, 0.30, 0.0);
        s.add("cooker", ElementKind::Object, 0.70, 0.30, 0.0);
        hand_home(s, "sponge");
        break;
    }
}

void script_template(Script& s, Template t)
{
    s.idle(kPad);
    switch (t) {
    case Template::Relocate:
        pick(s, {"cup"});
        s.carry_to(at(s, "cup", 0.50, 0.0), s.jitter(150));
        place(s);
        break;
    case Template::PickAndPlace:
    case Template::PassByDistractor:
        pick(s, {"cup"});
        s.carry_to(at(s, "plate", 0.0, 0.0, 0.01), s.jitter(kPlace), "plate");
        place(s);
        break;
    case Template::CarryAssembly:
        pick(s, {"profile", "joint"});
        s.carry_to(at(s, "profile", 0.0, 0.45), s.jitter(120));
        place(s);
        break;
    case Template::TrayTwoCups:
        pick(s, {"cup1"});
        s.carry_to(at(s, "tray", 0.0, -0.08, 0.01), s.jitter(kPlace), "tray");
        place(s);
        s.idle(s.jitter(kBetween));
        pick(s, {"cup2"});
        s.carry_to(at(s, "tray", 0.0, 0.08, 0.01), s.jitter(kPlace), "tray");
        place(s);
        break;
    case Template::WeighAndBox:
        pick(s, {"profile_C"});
        s.carry_to(at(s, "scale", 0.0, 0.0, 0.01), s.jitter(kPlace), "scale");
        place(s);
        s.idle(s.jitter(kBetween));
        pick(s, {"profile_C"});
        s.carry_to(at(s, "box", 0.0, -0.03), s.jitter(kPlace), "box");
        place(s);
        break;
    case Template::Cashier:
        pick(s, {"bottle"});
        s.carry_to(at(s, "scanner", 0.0, -0.05), s.jitter(kPlace), "scanner");
        s.idle(s.jitter(kDwell));
        s.oscillate(Eigen::Vector3d::UnitX(), 0.05, 3, 30);
        s.idle(s.jitter(kDwell));
        s.carry_to(at(s, "packing", -0.10, 0.0), s.jitter(kPlace), "packing");
        place(s);
        break;
    case Template::StirAndPlace:
        pick(s, {"spoon"});
        s.carry_to(at(s, "mug", 0.0, 0.0, 0.05), s.jitter(kPlace), "mug");
        s.idle(s.jitter(kDwell));
        s.circle(0.03, 3, 30);
        s.idle(s.jitter(kDwell));
        s.carry_to(at(s, "saucer", -0.10, 0.0), s.jitter(kPlace), "saucer");
        place(s);
        break;
    case Template::CleanSurface:
        pick(s, {"sponge"});
        s.carry_to(at(s, "cooker", 0.0, 0.0, 0.02), s.jitter(kPlace), "cooker");
        s.idle(s.jitter(kDwell));
        s.oscillate(Eigen::Vector3d::UnitY(), 0.06, 3, 30);
        place(s);
        break;
    }
    s.idle(kPad);
}

double planar_distance(const Pose6D& a, const Pose6D& b, const std::vector<Axis>& axes)
{
    double sum = 0.0;
    for (Axis ax : axes) {
        const double d = a.position[static_cast<int>(ax)] - b.position[static_cast<int>(ax)];
        sum += d * d;
    }
    return std::sqrt(sum);
}

GroundTruth derive_truth(const Script& s, const PipelineConfig& cfg, Frame duration)
{
    GroundTruth gt;
    gt.hand = kHand;
    const auto& tracks = s.tracks();
    auto pose = [&](const std::string& id, Frame k) -> const Pose6D& {
        return tracks.at(id)[static_cast<std::size_t>(k)];
    };

    for (const auto& id : s.ids()) {
        if (s.kinds().at(id) == ElementKind::Hand) {
            continue;
        }
        gt.initial_scene[id] = pose(id, 0);
        ObjectSettings settings;
        settings.grasp_point = pose(id, 0).orientation.conjugate() * kGraspOffset;
        gt.objects[id] = settings;
    }

    for (const auto& a : s.log()) {
        GtActivity ga;
        ga.grasped = a.grasped.front();
        ga.members = a.grasped;
        std::sort(ga.members.begin(), ga.members.end());
        ga.target = a.grasped.size() > 1 ? unity_id(a.grasped) : a.grasped.front();
        Frame departure = a.release;
        while (departure < duration &&
               planar_distance(pose(kHand, departure), pose(ga.grasped, departure), cfg.axes) < cfg.d_ho_threshold) {
            ++departure;
        }
        ga.contact = {a.attach, departure - 1};
        ga.frames = ga.contact;
        ga.carry = {a.carry_first, a.carry_last};
        ga.visits = a.visits;
        ga.primitives = {"move", "grasp"};
        for (std::size_t i = 0; i < a.visits.size(); ++i) {
            ga.primitives.push_back("move");
            if (a.complex[i]) {
                ga.primitives.push_back("move_complex");
            }
        }
        ga.primitives.push_back("release");
        gt.activities.push_back(ga);
    }

    std::map<std::string, Placement> last;
    for (const auto& a : gt.activities) {
        if (a.visits.empty()) {
            continue;
        }
        const Frame end = duration - 1;
        last[a.grasped] = Placement{a.grasped, a.visits.back(),
                                    relative_transform(pose(a.visits.back(), end), pose(a.grasped, end))};
    }
    for (auto& [id, p] : last) {
        gt.placements.push_back(p);
    }

    const Frame first = cfg.half_window();
    const Frame final_frame = duration - 1 - cfg.half_window();
    auto label = [&](Frame k) {
        for (const auto& a : gt.activities) {
            if (k < a.contact.first || k > a.contact.last) {
                continue;
            }
            std::string background;
            double best = cfg.d_oo_threshold;
            for (const auto& v : a.visits) {
                const double d = planar_distance(pose(a.grasped, k), pose(v, k), cfg.axes);
                if (d < best) {
                    best = d;
                    background = v;
                }
            }
            return std::make_pair(a.target, background);
        }
        return std::make_pair(std::string(), std::string());
    };
    for (Frame k = first; k <= final_frame; ++k) {
        const auto [target, background] = label(k);
        if (!gt.ius.empty() && gt.ius.back().target == target && gt.ius.back().background == background) {
            gt.ius.back().frames.last = k;
            continue;
        }
        GtUnit u;
        u.frames = {k, k};
        u.target = target;
        u.background = background;
        u.kind = target.empty() ? IuKind::Idle : (background.empty() ? IuKind::HO : IuKind::HOO);
        gt.ius.push_back(u);
    }
    return gt;
}

} // namespace

std::string to_string(Template t)
{
    for (const auto& tn : kTemplateNames) {
        if (tn.tmpl == t) {
            return tn.name;
        }
    }
    return "?";
}

Template template_from_string(const std::string& s)
{
    for (const auto& tn : kTemplateNames) {
        if (s == tn.name) {
            return tn.tmpl;
        }
    }
    throw std::invalid_argument("unknown template '" + s + "'");
}

const std::vector<Template>& all_templates()
{
    static const std::vector<Template> all = [] {
        std::vector<Template> v;
        for (const auto& tn : kTemplateNames) {
            v.push_back(tn.tmpl);
        }
        return v;
    }();
    return all;
}

double minimum_jerk(double tau)
{
    tau = std::clamp(tau, 0.0, 1.0);
    return tau * tau * tau * (10.0 - 15.0 * tau + 6.0 * tau * tau);
}

Scenario generate_scenario(const ScenarioSpec& spec)
{
    spec.config.validate();
    if (spec.noise_sigma < 0 || !std::isfinite(spec.noise_sigma)) {
        throw std::invalid_argument("noise sigma must be finite and nonnegative");
    }
    std::mt19937_64 rng(spec.seed);
    const bool jitter = spec.jitter && spec.seed != 0;
    Script s(spec.config.quantization, jitter ? &rng : nullptr);
    build_template(s, spec.tmpl);
    if (jitter) {
        std::uniform_int_distribution<int> bins(-5, 5);
        const double q = spec.config.quantization;
        s.shift(bins(rng) * q, bins(rng) * q);
        std::uniform_real_distribution<double> yaw(-std::numbers::pi, std::numbers::pi);
        for (const auto& id : s.ids()) {
            if (s.kinds().at(id) == ElementKind::Object) {
                s.rotate(id, yaw(rng));
            }
        }
    }
    s.start();
    script_template(s, spec.tmpl);

    const Frame duration = static_cast<Frame>(s.tracks().begin()->second.size());
    Scenario out;
    out.truth = derive_truth(s, spec.config, duration);

    std::mt19937_64 noise_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> noise(0.0, spec.noise_sigma > 0 ? spec.noise_sigma : 1.0);
    std::vector<Track> tracks;
    for (const auto& id : s.ids()) {
        Track t;
        t.element = ElementId{id, s.kinds().at(id)};
        for (const auto& p : s.tracks().at(id)) {
            Pose6D noisy = p;
            if (spec.noise_sigma > 0) {
                noisy.position += Eigen::Vector3d(noise(noise_rng), noise(noise_rng), noise(noise_rng));
            }
            t.poses.emplace_back(noisy);
        }
        tracks.push_back(std::move(t));
    }
    out.recording = Recording(spec.config.sample_rate, duration, std::move(tracks));
    return out;
}

std::map<std::string, Pose6D> scene_at(const Recording& recording, Frame k)
{
    std::map<std::string, Pose6D> out;
    for (const auto& o : recording.objects()) {
        if (recording.present(o.id, k)) {
            out[o.id] = recording.pose(o.id, k);
        }
    }
    return out;
}

std::map<std::string, Pose6D> random_scene(const std::vector<std::string>& ids, std::uint64_t seed,
                                           double min_separation)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> xy(0.0, 1.0);
    std::uniform_real_distribution<double> yaw(-std::numbers::pi, std::numbers::pi);
    std::map<std::string, Pose6D> out;
    for (const auto& id : ids) {
        for (int attempt = 0;; ++attempt) {
            if (attempt > 10000) {
                throw std::runtime_error("cannot place '" + id + "' with the requested separation");
            }
            const Eigen::Vector3d p(xy(rng), xy(rng), 0.0);
            bool ok = true;
            for (const auto& [other, pose] : out) {
                if ((pose.position - p).norm() < min_separation) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                out[id] = Pose6D(p, Eigen::Quaterniond(Eigen::AngleAxisd(yaw(rng), Eigen::Vector3d::UnitZ())));
                break;
            }
        }
    }
    return out;
}

BoundaryReport compare_boundaries(const std::vector<InteractionUnit>& detected, const std::vector<GtUnit>& expected)
{
    BoundaryReport r;
    if (detected.size() != expected.size()) {
        r.message = "detected " + std::to_string(detected.size()) + " IUs, expected " +
                    std::to_string(expected.size());
        return r;
    }
    for (std::size_t i = 0; i < detected.size(); ++i) {
        const auto& d = detected[i];
        const auto& e = expected[i];
        const std::string background = d.graphs.empty() || !d.graphs.front().background()
                                           ? std::string()
                                           : d.graphs.front().background()->id;
        if (d.kind != e.kind || d.target() != e.target || background != e.background) {
            r.message = "IU " + std::to_string(i) + " is " + to_string(d.kind) + "(" + d.target() + "," +
                        background + "), expected " + to_string(e.kind) + "(" + e.target + "," + e.background + ")";
            return r;
        }
        if (i > 0) {
            r.max_error = std::max(r.max_error, std::abs(d.first - e.frames.first));
        }
    }
    r.structure_matches = true;
    return r;
}

std::vector<std::string> primitive_labels(const std::vector<Primitive>& primitives)
{
    std::vector<std::string> out;
    for (const auto& p : primitives) {
        if (p.kind == PrimitiveKind::Move) {
            out.push_back(p.complex ? "move_complex" : (p.custom_pose ? "move_away" : "move"));
        } else {
            out.push_back(to_string(p.kind));
        }
    }
    return out;
}

std::string truth_json(const GroundTruth& truth)
{
    using nlohmann::json;
    auto interval = [](const Interval& i) { return json::array({i.first, i.last}); };
    json doc;
    doc["hand"] = truth.hand;
    doc["ius"] = json::array();
    for (const auto& u : truth.ius) {
        doc["ius"].push_back({{"frames", interval(u.frames)},
                              {"kind", to_string(u.kind)},
                              {"target", u.target},
                              {"background", u.background}});
    }
    doc["activities"] = json::array();
    for (const auto& a : truth.activities) {
        doc["activities"].push_back({{"frames", interval(a.frames)},
                                     {"grasped", a.grasped},
                                     {"target", a.target},
                                     {"members", a.members},
                                     {"contact", interval(a.contact)},
                                     {"carry", interval(a.carry)},
                                     {"visits", a.visits},
                                     {"primitives", a.primitives}});
    }
    doc["placements"] = json::array();
    for (const auto& p : truth.placements) {
        doc["placements"].push_back(
            {{"moving", p.moving}, {"target", p.target}, {"relative", to_row_major(p.relative)}});
    }
    doc["initial_scene"] = json::object();
    for (const auto& [id, pose] : truth.initial_scene) {
        doc["initial_scene"][id] = detail::pose_json(pose);
    }
    doc["objects"] = json::parse(object_config_json(truth.objects)).at("objects");
    return doc.dump(2) + "\n";
}

} // namespace infoplan
