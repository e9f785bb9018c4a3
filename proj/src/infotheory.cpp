#include "infoplan/infotheory.hpp"

#include <limits>
#include <string>

namespace infoplan {

std::optional<Trend> try_trend_sign(const TimeSeries& series, Frame t, int horizon)
{
    if (horizon < 1) {
        throw std::invalid_argument("trend horizon must be >= 1");
    }
    for (Frame k = t - horizon; k <= t; ++k) {
        if (!series.defined(k)) {
            return std::nullopt;
        }
    }
    int decreasing = 0;
    for (Frame k = t - horizon + 1; k <= t; ++k) {
        if (*series.at(k) - *series.at(k - 1) < 0) {
            ++decreasing;
        }
    }
    return 2 * decreasing > horizon ? Trend::Negative : Trend::NonNegative;
}

Trend trend_sign(const TimeSeries& series, Frame t, int horizon)
{
    const auto trend = try_trend_sign(series, t, horizon);
    if (!trend) {
        throw std::out_of_range("insufficient history for trend at frame " + std::to_string(t));
    }
    return *trend;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool gather(const TimeSeries& s, Frame first, Frame last, std::vector<double>& out)
{
    out.clear();
    for (Frame k = first; k <= last; ++k) {
        const auto v = s.at(k);
        if (!v) {
            return false;
        }
        out.push_back(*v);
    }
    return true;
}

void require_window(int w)
{
    if (w < 2 || w % 2 != 0) {
        throw std::invalid_argument("window must be even and >= 2");
    }
}

} // namespace

TimeSeries sliding_entropy(const TimeSeries& input, int w, const QuantizationGrid& grid)
{
    require_window(w);
    TimeSeries out{input.start_frame, std::vector<double>(input.values.size(), kNaN)};
    std::vector<double> window;
    for (Frame k = input.start_frame; k < input.end_frame(); ++k) {
        if (gather(input, k - w / 2, k + w / 2 - 1, window)) {
            out.values[static_cast<std::size_t>(k - input.start_frame)] =
                entropy(std::span<const double>(window), grid);
        }
    }
    return out;
}

TimeSeries sliding_mutual_information(const TimeSeries& x, const TimeSeries& y, int w, const QuantizationGrid& grid)
{
    require_window(w);
    if (x.start_frame != y.start_frame || x.values.size() != y.values.size()) {
        throw std::invalid_argument("series are not aligned");
    }
    TimeSeries out{x.start_frame, std::vector<double>(x.values.size(), kNaN)};
    std::vector<double> wx;
    std::vector<double> wy;
    for (Frame k = x.start_frame; k < x.end_frame(); ++k) {
        if (gather(x, k - w / 2, k + w / 2 - 1, wx) && gather(y, k - w / 2, k + w / 2 - 1, wy)) {
            out.values[static_cast<std::size_t>(k - x.start_frame)] =
                mutual_information(std::span<const double>(wx), std::span<const double>(wy), grid);
        }
    }
    return out;
}

} // namespace infoplan
