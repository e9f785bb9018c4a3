#include "infoplan/baseline.hpp"

#include <algorithm>
#include <stdexcept>

namespace infoplan {

namespace {

Eigen::VectorXd velocity(const Recording& rec, const std::string& id, Frame k, const std::vector<Axis>& axes)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(axes.size()));
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const int c = static_cast<int>(axes[i]);
        v[static_cast<Eigen::Index>(i)] =
            (rec.pose(id, k + 1).position[c] - rec.pose(id, k - 1).position[c]) * rec.sample_rate() / 2.0;
    }
    return v;
}

struct Speeds {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> rel;
    std::vector<bool> valid;
};

Speeds speeds(const Recording& rec, const std::string& a, const std::string& b, const std::vector<Axis>& axes)
{
    const auto n = static_cast<std::size_t>(rec.duration());
    Speeds s{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n), std::vector<bool>(n, false)};
    for (Frame k = 1; k + 1 < rec.duration(); ++k) {
        if (!rec.present_over(a, k - 1, k + 1) || !rec.present_over(b, k - 1, k + 1)) {
            continue;
        }
        const auto va = velocity(rec, a, k, axes);
        const auto vb = velocity(rec, b, k, axes);
        const auto i = static_cast<std::size_t>(k);
        s.a[i] = va.norm();
        s.b[i] = vb.norm();
        s.rel[i] = (va - vb).norm();
        s.valid[i] = true;
    }
    return s;
}

std::vector<bool> flag(const Speeds& s, const VelocityThresholds& t)
{
    std::vector<bool> out(s.valid.size(), false);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = s.valid[i] && s.a[i] > t.motion && s.b[i] > t.motion && s.rel[i] < t.relative;
    }
    return out;
}

} // namespace

std::vector<bool> velocity_detector(const Recording& recording, const std::string& a, const std::string& b,
                                    const VelocityThresholds& thresholds, const std::vector<Axis>& axes)
{
    return flag(speeds(recording, a, b, axes), thresholds);
}

std::vector<bool> ho_mask(const GraphSequence& graphs, const std::string& object, Frame duration)
{
    std::vector<bool> out(static_cast<std::size_t>(duration), false);
    for (std::size_t i = 0; i < graphs.graphs.size(); ++i) {
        const auto& g = graphs.graphs[i];
        if (!g) {
            continue;
        }
        const Node& m = g->manipulated();
        const bool hit = m.id == object ||
                         std::find(m.members.begin(), m.members.end(), object) != m.members.end();
        if (hit) {
            out[static_cast<std::size_t>(graphs.first_frame) + i] = true;
        }
    }
    return out;
}

std::vector<bool> interval_mask(Frame first, Frame last, Frame duration)
{
    std::vector<bool> out(static_cast<std::size_t>(duration), false);
    for (Frame k = std::max<Frame>(first, 0); k <= last && k < duration; ++k) {
        out[static_cast<std::size_t>(k)] = true;
    }
    return out;
}

double mask_iou(const std::vector<bool>& a, const std::vector<bool>& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("masks differ in length");
    }
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        inter += (a[i] && b[i]) ? 1 : 0;
        uni += (a[i] || b[i]) ? 1 : 0;
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

VelocityThresholds best_roc_thresholds(const std::vector<LabeledRun>& runs, const std::vector<double>& motion_grid,
                                       const std::vector<double>& relative_grid, const std::vector<Axis>& axes)
{
    std::vector<Speeds> cached;
    for (const auto& r : runs) {
        cached.push_back(speeds(*r.recording, r.a, r.b, axes));
    }
    VelocityThresholds best{motion_grid.front(), relative_grid.front()};
    double best_j = -2.0;
    for (double m : motion_grid) {
        for (double rel : relative_grid) {
            std::size_t tp = 0, fp = 0, pos = 0, neg = 0;
            for (std::size_t r = 0; r < runs.size(); ++r) {
                const auto f = flag(cached[r], {m, rel});
                for (std::size_t i = 0; i < f.size(); ++i) {
                    if (!cached[r].valid[i]) {
                        continue;
                    }
                    if (runs[r].truth[i]) {
                        ++pos;
                        tp += f[i] ? 1 : 0;
                    } else {
                        ++neg;
                        fp += f[i] ? 1 : 0;
                    }
                }
            }
            const double tpr = pos ? double(tp) / double(pos) : 0.0;
            const double fpr = neg ? double(fp) / double(neg) : 0.0;
            if (tpr - fpr > best_j) {
                best_j = tpr - fpr;
                best = {m, rel};
            }
        }
    }
    return best;
}

} // namespace infoplan
