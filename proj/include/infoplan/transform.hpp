#pragma once

#include "infoplan/types.hpp"

#include <Eigen/Geometry>

#include <array>
#include <cmath>

namespace infoplan {

/// Rigid transform with orthonormal rotation and translation in meters.
template <typename Scalar>
using HomogeneousTransformT = Eigen::Transform<Scalar, 3, Eigen::Isometry>;
using HomogeneousTransform = HomogeneousTransformT<double>;

template <typename Scalar>
HomogeneousTransformT<Scalar> to_transform(const PoseT<Scalar>& pose)
{
    HomogeneousTransformT<Scalar> t = HomogeneousTransformT<Scalar>::Identity();
    t.linear() = pose.orientation.normalized().toRotationMatrix();
    t.translation() = pose.position;
    return t;
}

template <typename Scalar>
PoseT<Scalar> to_pose(const HomogeneousTransformT<Scalar>& t)
{
    Eigen::Quaternion<Scalar> q(t.rotation());
    q.normalize();
    return PoseT<Scalar>(t.translation(), q);
}

/// Pose of `moving` expressed in the frame of `reference`: T^{reference}_{moving}.
template <typename Scalar>
HomogeneousTransformT<Scalar> relative_transform(const PoseT<Scalar>& reference,
                                                 const PoseT<Scalar>& moving)
{
    return to_transform(reference).inverse(Eigen::Isometry) * to_transform(moving);
}

/// Row-major 16 values.
template <typename Scalar>
std::array<Scalar, 16> to_row_major(const HomogeneousTransformT<Scalar>& t)
{
    std::array<Scalar, 16> out{};
    const auto& m = t.matrix();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out[static_cast<std::size_t>(r * 4 + c)] = m(r, c);
        }
    }
    return out;
}

template <typename Scalar>
HomogeneousTransformT<Scalar> from_row_major(const std::array<Scalar, 16>& values)
{
    HomogeneousTransformT<Scalar> t;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            t.matrix()(r, c) = values[static_cast<std::size_t>(r * 4 + c)];
        }
    }
    return t;
}

/// Rotation about the world vertical axis, in (-pi, pi].
template <typename Scalar>
Scalar yaw_of(const HomogeneousTransformT<Scalar>& t)
{
    const auto& r = t.linear();
    return std::atan2(r(1, 0), r(0, 0));
}

/// Keeps translation and the yaw component of the rotation only.
template <typename Scalar>
HomogeneousTransformT<Scalar> project_yaw_only(const HomogeneousTransformT<Scalar>& t)
{
    HomogeneousTransformT<Scalar> out = HomogeneousTransformT<Scalar>::Identity();
    out.linear() = Eigen::AngleAxis<Scalar>(yaw_of(t), Eigen::Matrix<Scalar, 3, 1>::UnitZ())
                       .toRotationMatrix();
    out.translation() = t.translation();
    return out;
}

/// Wraps an angle difference into [0, pi].
template <typename Scalar>
Scalar angle_distance(Scalar a, Scalar b)
{
    Scalar d = std::fmod(std::abs(a - b), Scalar(2 * M_PI));
    return d > Scalar(M_PI) ? Scalar(2 * M_PI) - d : d;
}

/// True when R * R^T = I within `tol` and the last row is [0 0 0 1].
template <typename Scalar>
bool is_rigid(const HomogeneousTransformT<Scalar>& t, Scalar tol = Scalar(1e-9))
{
    const auto& m = t.matrix();
    const Eigen::Matrix<Scalar, 3, 3> r = m.template topLeftCorner<3, 3>();
    if ((r * r.transpose() - Eigen::Matrix<Scalar, 3, 3>::Identity()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (r.determinant() < 0) {
        return false;
    }
    return m(3, 0) == 0 && m(3, 1) == 0 && m(3, 2) == 0 && m(3, 3) == 1;
}

} // namespace infoplan
