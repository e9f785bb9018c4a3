#pragma once

#include "infoplan/primitives.hpp"
#include "infoplan/recording.hpp"
#include "infoplan/segmentation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace infoplan {

enum class Template {
    Relocate,
    StirAndPlace,
    CarryAssembly,
    PickAndPlace,
    PassByDistractor,
    Cashier,
    WeighAndBox,
    TrayTwoCups,
    CleanSurface,
};

std::string to_string(Template t);
Template template_from_string(const std::string& s);
const std::vector<Template>& all_templates();

struct ScenarioSpec {
    Template tmpl = Template::PickAndPlace;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    /// Seed 0 reproduces the nominal layout and timing; other seeds shift the
    /// layout by whole bins, jitter phase lengths and rotate objects about z.
    bool jitter = true;
    PipelineConfig config;
};

struct Interval {
    Frame first = 0;
    Frame last = 0;
};

/// Expected IU in the filtered segmentation.
struct GtUnit {
    Interval frames;
    IuKind kind = IuKind::Idle;
    std::string target;
    std::string background;
};

struct GtActivity {
    Interval frames;
    /// Object the hand grasps first.
    std::string grasped;
    /// Hand-side node id (object id, or unity id when several objects ride along).
    std::string target;
    std::vector<std::string> members;
    /// Hand contact: from the grasp until the hand first moves d_ho away after
    /// releasing.
    Interval contact;
    /// Object carried while the hand holds it (first to last moving frame).
    Interval carry;
    /// Declared placement targets in visiting order.
    std::vector<std::string> visits;
    /// Expected primitive labels: move, grasp, move_complex, release.
    std::vector<std::string> primitives;
};

struct Placement {
    std::string moving;
    std::string target;
    HomogeneousTransform relative = HomogeneousTransform::Identity();
};

struct GroundTruth {
    std::vector<GtActivity> activities;
    std::vector<GtUnit> ius;
    /// Final T^{target}_{moving} of the last placement of each moved object.
    std::vector<Placement> placements;
    ObjectConfig objects;
    /// Object poses on the first frame.
    std::map<std::string, Pose6D> initial_scene;
    std::string hand;
};

struct Scenario {
    Recording recording;
    GroundTruth truth;
};

/// Throws std::invalid_argument on an invalid spec.
Scenario generate_scenario(const ScenarioSpec& spec);

/// 10 tau^3 - 15 tau^4 + 6 tau^5, tau clamped to [0, 1].
double minimum_jerk(double tau);

/// Object poses of `recording` at frame k (hand excluded).
std::map<std::string, Pose6D> scene_at(const Recording& recording, Frame k);

/// Random non-overlapping layout of `ids` in a 1 m square with random yaw;
/// elements are at least `min_separation` apart.
std::map<std::string, Pose6D> random_scene(const std::vector<std::string>& ids, std::uint64_t seed,
                                           double min_separation = 0.3);

/// Largest boundary error between the detected and expected IU lists, or an
/// explanation when the lists differ in count, kind or node identity.
struct BoundaryReport {
    bool structure_matches = false;
    Frame max_error = 0;
    std::string message;
};

BoundaryReport compare_boundaries(const std::vector<InteractionUnit>& detected, const std::vector<GtUnit>& expected);

/// JSON document of the ground truth: IU and activity intervals, expected
/// primitive labels, final placements and the per-object grasp settings.
std::string truth_json(const GroundTruth& truth);

/// Labels of a primitive list in the same vocabulary as GtActivity::primitives.
std::vector<std::string> primitive_labels(const std::vector<Primitive>& primitives);

} // namespace infoplan
