#pragma once

#include "infoplan/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace infoplan {

/// Fixed-width histogram bins anchored at a global origin:
/// bin(v) = floor((v - origin) / q).
template <typename Scalar>
struct QuantizationGridT {
    Scalar q = Scalar(0.01);
    Scalar origin = Scalar(0);

    QuantizationGridT() = default;
    explicit QuantizationGridT(Scalar width, Scalar anchor = Scalar(0)) : q(width), origin(anchor)
    {
        if (!(q > 0)) {
            throw std::invalid_argument("quantization interval must be positive");
        }
    }

    std::int64_t bin(Scalar v) const
    {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("cannot quantize a non-finite value");
        }
        return static_cast<std::int64_t>(std::floor((v - origin) / q));
    }
};
using QuantizationGrid = QuantizationGridT<double>;

/// Occupied-bin counts of a sample set. Keys are bin-index tuples (one index
/// per variable), kept sorted.
struct EmpiricalDistribution {
    std::vector<std::vector<std::int64_t>> bins;
    std::vector<std::int64_t> counts;
    std::int64_t total = 0;

    double probability(std::size_t i) const { return static_cast<double>(counts[i]) / static_cast<double>(total); }
};

/// Windowed statistic indexed by frame. NaN marks frames without a full window.
struct TimeSeries {
    Frame start_frame = 0;
    std::vector<double> values;

    Frame end_frame() const { return start_frame + static_cast<Frame>(values.size()); }
    bool defined(Frame k) const
    {
        return k >= start_frame && k < end_frame() && !std::isnan(values[static_cast<std::size_t>(k - start_frame)]);
    }
    std::optional<double> at(Frame k) const
    {
        if (!defined(k)) {
            return std::nullopt;
        }
        return values[static_cast<std::size_t>(k - start_frame)];
    }
};

namespace detail {

inline double entropy_from_counts(const std::vector<std::int64_t>& counts, std::int64_t total)
{
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (std::int64_t c : counts) {
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

inline std::vector<std::int64_t> run_lengths(std::vector<std::int64_t>& keys)
{
    std::sort(keys.begin(), keys.end());
    std::vector<std::int64_t> counts;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i]) {
            ++j;
        }
        counts.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return counts;
}

template <typename Scalar>
std::vector<std::int64_t> bins_of(std::span<const Scalar> samples, const QuantizationGridT<Scalar>& grid)
{
    std::vector<std::int64_t> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = grid.bin(samples[i]);
    }
    return out;
}

/// Entropy of the joint distribution of several equally long bin sequences.
inline double joint_entropy_of_bins(const std::vector<std::vector<std::int64_t>>& columns)
{
    const std::size_t n = columns.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
        order[i] = i;
    }
    auto less = [&](std::size_t a, std::size_t b) {
        for (const auto& col : columns) {
            if (col[a] != col[b]) {
                return col[a] < col[b];
            }
        }
        return false;
    };
    auto equal = [&](std::size_t a, std::size_t b) {
        for (const auto& col : columns) {
            if (col[a] != col[b]) {
                return false;
            }
        }
        return true;
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<std::int64_t> counts;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && equal(order[j], order[i])) {
            ++j;
        }
        counts.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return entropy_from_counts(counts, static_cast<std::int64_t>(n));
}

template <typename Scalar>
void require_pair(std::span<const Scalar> x, std::span<const Scalar> y)
{
    if (x.empty() || y.empty()) {
        throw std::invalid_argument("empty sample list");
    }
    if (x.size() != y.size()) {
        throw std::invalid_argument("sample lists differ in length");
    }
}

} // namespace detail

/// Histogram of one or more aligned sample lists over `grid`.
template <typename Scalar>
EmpiricalDistribution empirical_distribution(const std::vector<std::span<const Scalar>>& variables,
                                             const QuantizationGridT<Scalar>& grid)
{
    if (variables.empty() || variables.front().empty()) {
        throw std::invalid_argument("empty sample list");
    }
    const std::size_t n = variables.front().size();
    std::vector<std::vector<std::int64_t>> tuples(n, std::vector<std::int64_t>(variables.size()));
    for (std::size_t v = 0; v < variables.size(); ++v) {
        if (variables[v].size() != n) {
            throw std::invalid_argument("sample lists differ in length");
        }
        for (std::size_t i = 0; i < n; ++i) {
            tuples[i][v] = grid.bin(variables[v][i]);
        }
    }
    std::sort(tuples.begin(), tuples.end());
    EmpiricalDistribution dist;
    dist.total = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && tuples[j] == tuples[i]) {
            ++j;
        }
        dist.bins.push_back(tuples[i]);
        dist.counts.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    return dist;
}

/// Shannon entropy in bits of the binned samples.
template <typename Scalar>
double entropy(std::span<const Scalar> samples, const QuantizationGridT<Scalar>& grid)
{
    if (samples.empty()) {
        throw std::invalid_argument("entropy of an empty sample list");
    }
    auto bins = detail::bins_of(samples, grid);
    const auto counts = detail::run_lengths(bins);
    return detail::entropy_from_counts(counts, static_cast<std::int64_t>(samples.size()));
}

template <typename Scalar>
double joint_entropy(std::span<const Scalar> x, std::span<const Scalar> y, const QuantizationGridT<Scalar>& grid)
{
    detail::require_pair(x, y);
    return detail::joint_entropy_of_bins({detail::bins_of(x, grid), detail::bins_of(y, grid)});
}

/// H(x) + H(y) - H(x, y), clamped at zero against rounding.
template <typename Scalar>
double mutual_information(std::span<const Scalar> x, std::span<const Scalar> y, const QuantizationGridT<Scalar>& grid)
{
    detail::require_pair(x, y);
    auto bx = detail::bins_of(x, grid);
    auto by = detail::bins_of(y, grid);
    const double hxy = detail::joint_entropy_of_bins({bx, by});
    const double hx = detail::entropy_from_counts(detail::run_lengths(bx), static_cast<std::int64_t>(x.size()));
    const double hy = detail::entropy_from_counts(detail::run_lengths(by), static_cast<std::int64_t>(y.size()));
    return std::max(0.0, hx + hy - hxy);
}

/// Per-axis mutual information summed over `axes`. Rows are samples, columns
/// are x, y, z.
template <typename Scalar>
double mutual_information_nd(const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 3>>& track_a,
                             const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 3>>& track_b,
                             const std::vector<Axis>& axes, const QuantizationGridT<Scalar>& grid)
{
    if (track_a.rows() != track_b.rows()) {
        throw std::invalid_argument("windowed tracks differ in length");
    }
    double total = 0.0;
    for (Axis axis : axes) {
        const int c = static_cast<int>(axis);
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> a = track_a.col(c);
        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b = track_b.col(c);
        total += mutual_information(std::span<const Scalar>(a.data(), static_cast<std::size_t>(a.size())),
                                    std::span<const Scalar>(b.data(), static_cast<std::size_t>(b.size())), grid);
    }
    return total;
}

/// Inclusion-exclusion sum over every nonempty subset S of the signals:
/// sum (-1)^(|S|+1) H(S). Reduces to mutual information for two signals.
template <typename Scalar>
double co_information(const std::vector<std::span<const Scalar>>& signals, const QuantizationGridT<Scalar>& grid,
                      std::size_t min_signals = 3)
{
    if (signals.size() < min_signals) {
        throw std::invalid_argument("co-information needs at least " + std::to_string(min_signals) + " signals");
    }
    if (signals.size() > 20) {
        throw std::invalid_argument("co-information over more than 20 signals is not supported");
    }
    const std::size_t n = signals.front().size();
    std::vector<std::vector<std::int64_t>> bins;
    for (const auto& s : signals) {
        if (s.size() != n || n == 0) {
            throw std::invalid_argument("co-information signals must be nonempty and equally long");
        }
        bins.push_back(detail::bins_of(s, grid));
    }
    double total = 0.0;
    const std::uint32_t subsets = 1u << signals.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        std::vector<std::vector<std::int64_t>> columns;
        for (std::size_t i = 0; i < signals.size(); ++i) {
            if (mask & (1u << i)) {
                columns.push_back(bins[i]);
            }
        }
        const double h = detail::joint_entropy_of_bins(columns);
        total += (columns.size() % 2 == 1) ? h : -h;
    }
    return total;
}

enum class Trend { Negative, NonNegative };

/// Negative iff strictly more than half of the `horizon` consecutive
/// differences ending at `t` are below zero. Throws when the series lacks
/// horizon + 1 defined values ending at t.
Trend trend_sign(const TimeSeries& series, Frame t, int horizon);

/// Like trend_sign but returns nullopt instead of throwing on short history.
std::optional<Trend> try_trend_sign(const TimeSeries& series, Frame t, int horizon);

/// Centered sliding entropy of a scalar series (NaN where any window sample is
/// missing). Output frame k summarizes the w inputs [k - w/2, k + w/2 - 1].
TimeSeries sliding_entropy(const TimeSeries& input, int w, const QuantizationGrid& grid);

/// Centered sliding mutual information of two aligned scalar series.
TimeSeries sliding_mutual_information(const TimeSeries& x, const TimeSeries& y, int w, const QuantizationGrid& grid);

} // namespace infoplan
