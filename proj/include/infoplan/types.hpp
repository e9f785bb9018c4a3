#pragma once

#include <Eigen/Geometry>

#include <compare>
#include <cstdint>
#include <string>

namespace infoplan {

using Frame = std::int64_t;

enum class ElementKind { Hand, Object };

std::string to_string(ElementKind kind);
ElementKind element_kind_from_string(const std::string& text);

/// Scene element label. Ids are unique within a recording.
struct ElementId {
    std::string id;
    ElementKind kind = ElementKind::Object;

    auto operator<=>(const ElementId& other) const { return id <=> other.id; }
    bool operator==(const ElementId& other) const { return id == other.id; }
};

/// Position in meters plus a unit quaternion. Stored scalar-last on disk
/// (qx, qy, qz, qw); Eigen keeps its own internal layout.
template <typename Scalar>
struct PoseT {
    using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
    using Quaternion = Eigen::Quaternion<Scalar>;

    Vector3 position = Vector3::Zero();
    Quaternion orientation = Quaternion::Identity();

    PoseT() = default;
    PoseT(const Vector3& p, const Quaternion& q) : position(p), orientation(q) {}

    static PoseT from_xyz_yaw(Scalar x, Scalar y, Scalar z, Scalar yaw)
    {
        return PoseT(Vector3(x, y, z),
                     Quaternion(Eigen::AngleAxis<Scalar>(yaw, Vector3::UnitZ())));
    }

    bool operator==(const PoseT& other) const
    {
        return position == other.position && orientation.coeffs() == other.orientation.coeffs();
    }
};

using Pose6D = PoseT<double>;

/// Axis selection for windowed statistics.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

} // namespace infoplan
