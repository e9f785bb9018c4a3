#include "infoplan/signals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace infoplan {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string to_string(Statistic s)
{
    switch (s) {
    case Statistic::Entropy: return "entropy";
    case Statistic::MutualInformation: return "mi";
    case Statistic::AverageDistance: return "avg_distance";
    case Statistic::EntropyOfDistance: return "entropy_of_distance";
    }
    return "?";
}

Statistic statistic_from_string(const std::string& text)
{
    for (Statistic s : {Statistic::Entropy, Statistic::MutualInformation, Statistic::AverageDistance,
                        Statistic::EntropyOfDistance}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    throw std::invalid_argument("unknown statistic '" + text + "'");
}

TimeSeries position_series(const Recording& recording, const std::string& id, Axis axis)
{
    const auto& track = recording.track(id);
    TimeSeries out{0, std::vector<double>(track.poses.size(), kNaN)};
    for (std::size_t k = 0; k < track.poses.size(); ++k) {
        if (track.poses[k]) {
            out.values[k] = track.poses[k]->position[static_cast<int>(axis)];
        }
    }
    return out;
}

namespace {

TimeSeries distance_series(const Recording& recording, const std::string& a, const std::string& b,
                           const std::vector<Axis>& axes)
{
    TimeSeries out{0, std::vector<double>(static_cast<std::size_t>(recording.duration()), kNaN)};
    for (Frame k = 0; k < recording.duration(); ++k) {
        if (recording.present(a, k) && recording.present(b, k)) {
            out.values[static_cast<std::size_t>(k)] = instantaneous_distance(recording, a, b, k, axes);
        }
    }
    return out;
}

TimeSeries windowed_mean(const TimeSeries& input, int w)
{
    TimeSeries out{input.start_frame, std::vector<double>(input.values.size(), kNaN)};
    for (Frame k = input.start_frame; k < input.end_frame(); ++k) {
        double sum = 0;
        bool full = true;
        for (Frame j = k - w / 2; j < k + w / 2; ++j) {
            const auto v = input.at(j);
            if (!v) {
                full = false;
                break;
            }
            sum += *v;
        }
        if (full) {
            out.values[static_cast<std::size_t>(k - input.start_frame)] = sum / static_cast<double>(w);
        }
    }
    return out;
}

TimeSeries add_series(TimeSeries acc, const TimeSeries& term)
{
    for (std::size_t i = 0; i < acc.values.size(); ++i) {
        acc.values[i] += term.values[i];
    }
    return acc;
}

void require_pair(const SignalSelector& selector)
{
    if (!selector.b) {
        throw std::invalid_argument("pair statistic needs two elements");
    }
}

} // namespace

TimeSeries sliding_series(const Recording& recording, const SignalSelector& selector, int w, Statistic statistic,
                          const PipelineConfig& config)
{
    if (w < 2 || w % 2 != 0) {
        throw std::invalid_argument("window must be even and >= 2");
    }
    if (recording.duration() < w + 1) {
        throw std::invalid_argument("recording shorter than the window");
    }
    const QuantizationGrid grid(config.quantization);
    switch (statistic) {
    case Statistic::Entropy: {
        TimeSeries total;
        for (std::size_t i = 0; i < config.axes.size(); ++i) {
            auto h = sliding_entropy(position_series(recording, selector.a, config.axes[i]), w, grid);
            total = i == 0 ? std::move(h) : add_series(std::move(total), h);
        }
        return total;
    }
    case Statistic::MutualInformation: {
        require_pair(selector);
        TimeSeries total;
        for (std::size_t i = 0; i < config.axes.size(); ++i) {
            auto mi = sliding_mutual_information(position_series(recording, selector.a, config.axes[i]),
                                                 position_series(recording, *selector.b, config.axes[i]), w, grid);
            total = i == 0 ? std::move(mi) : add_series(std::move(total), mi);
        }
        return total;
    }
    case Statistic::AverageDistance:
        require_pair(selector);
        return windowed_mean(distance_series(recording, selector.a, *selector.b, config.axes), w);
    case Statistic::EntropyOfDistance:
        require_pair(selector);
        return sliding_entropy(windowed_mean(distance_series(recording, selector.a, *selector.b, config.axes), w), w,
                               grid);
    }
    throw std::logic_error("unhandled statistic");
}

SignalBank::SignalBank(const Recording& recording, const PipelineConfig& config)
    : recording_(recording), config_(config)
{
    config_.validate();
}

const TimeSeries& SignalBank::entropy(const std::string& id)
{
    auto it = entropy_.find(id);
    if (it == entropy_.end()) {
        it = entropy_
                 .emplace(id, sliding_series(recording_, {id, std::nullopt}, config_.window_samples,
                                             Statistic::Entropy, config_))
                 .first;
    }
    return it->second;
}

const TimeSeries& SignalBank::pair_series(Statistic s, const std::string& a, const std::string& b)
{
    auto key = a < b ? std::make_tuple(s, a, b) : std::make_tuple(s, b, a);
    auto it = pairs_.find(key);
    if (it == pairs_.end()) {
        it = pairs_
                 .emplace(key, sliding_series(recording_, {std::get<1>(key), std::get<2>(key)},
                                              config_.window_samples, s, config_))
                 .first;
    }
    return it->second;
}

const TimeSeries& SignalBank::mutual_information(const std::string& a, const std::string& b)
{
    return pair_series(Statistic::MutualInformation, a, b);
}

const TimeSeries& SignalBank::average_distance(const std::string& a, const std::string& b)
{
    return pair_series(Statistic::AverageDistance, a, b);
}

const TimeSeries& SignalBank::entropy_of_distance(const std::string& a, const std::string& b)
{
    return pair_series(Statistic::EntropyOfDistance, a, b);
}

bool SignalBank::stationary(const std::string& id, Frame k)
{
    const auto h = entropy(id).at(k);
    return h && *h == 0.0;
}

} // namespace infoplan
