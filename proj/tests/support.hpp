#pragma once

#include "infoplan/recording.hpp"

#include <cmath>
#include <functional>
#include <map>

namespace infoplan::test {

// Builds a Recording from per-element position functions of the frame index.
// Orientation is identity; a function may return nullopt for an absent frame.
using Track3 = std::function<std::optional<Eigen::Vector3d>(Frame)>;

inline Recording make_recording(Frame duration, const std::string& hand, const Track3& hand_track,
                                const std::map<std::string, Track3>& objects, double rate = 30.0)
{
    std::vector<Track> tracks;
    auto build = [&](const std::string& id, ElementKind kind, const Track3& f) {
        Track t;
        t.element = ElementId{id, kind};
        for (Frame k = 0; k < duration; ++k) {
            const auto p = f(k);
            t.poses.push_back(p ? std::optional<Pose6D>(Pose6D(*p, Eigen::Quaterniond::Identity())) : std::nullopt);
        }
        tracks.push_back(std::move(t));
    };
    build(hand, ElementKind::Hand, hand_track);
    for (const auto& [id, f] : objects) {
        build(id, ElementKind::Object, f);
    }
    return Recording(rate, duration, std::move(tracks));
}

inline Track3 fixed(double x, double y, double z = 0.0)
{
    return [=](Frame) { return std::optional<Eigen::Vector3d>(Eigen::Vector3d(x, y, z)); };
}

// Half-bin lattice coordinate for a 1 cm grid.
inline double cell(int n) { return (n + 0.5) * 0.01; }

// Piecewise-linear path through (frame, position) waypoints, held constant
// outside them and snapped to the 1 cm half-bin lattice.
inline Track3 path(std::vector<std::pair<Frame, Eigen::Vector3d>> points)
{
    return [points](Frame k) {
        Eigen::Vector3d p = points.front().second;
        for (std::size_t i = 1; i < points.size(); ++i) {
            const auto& [k0, p0] = points[i - 1];
            const auto& [k1, p1] = points[i];
            if (k >= k1) {
                p = p1;
            } else if (k > k0) {
                p = p0 + (p1 - p0) * double(k - k0) / double(k1 - k0);
                break;
            }
        }
        for (int c = 0; c < 3; ++c) {
            p[c] = (std::floor(p[c] / 0.01) + 0.5) * 0.01;
        }
        return std::optional<Eigen::Vector3d>(p);
    };
}

} // namespace infoplan::test
