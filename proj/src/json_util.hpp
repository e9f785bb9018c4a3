#pragma once

#include "infoplan/transform.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace infoplan::detail {

inline nlohmann::json pose_json(const Pose6D& p)
{
    const auto& q = p.orientation;
    return {{"p", {p.position.x(), p.position.y(), p.position.z()}}, {"q", {q.x(), q.y(), q.z(), q.w()}}};
}

inline Pose6D pose_from(const nlohmann::json& j)
{
    const auto p = j.at("p").get<std::vector<double>>();
    const auto q = j.at("q").get<std::vector<double>>();
    if (p.size() != 3 || q.size() != 4) {
        throw std::invalid_argument("pose needs p[3] and q[4]");
    }
    Eigen::Quaterniond quat(q[3], q[0], q[1], q[2]);
    if (std::abs(quat.norm() - 1.0) > 1e-6) {
        throw std::invalid_argument("pose quaternion is not unit length");
    }
    return Pose6D(Eigen::Vector3d(p[0], p[1], p[2]), quat);
}

inline nlohmann::json vec3_json(const Eigen::Vector3d& v)
{
    return {v.x(), v.y(), v.z()};
}

inline Eigen::Vector3d vec3_from(const nlohmann::json& j)
{
    const auto v = j.get<std::vector<double>>();
    if (v.size() != 3) {
        throw std::invalid_argument("expected 3 values");
    }
    return {v[0], v[1], v[2]};
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << text;
}

} // namespace infoplan::detail
