#pragma once

#include "infoplan/config.hpp"
#include "infoplan/infotheory.hpp"
#include "infoplan/recording.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>

namespace infoplan {

enum class Statistic { Entropy, MutualInformation, AverageDistance, EntropyOfDistance };

std::string to_string(Statistic s);
Statistic statistic_from_string(const std::string& text);

/// Which element (or element pair) a windowed statistic is computed on.
/// Entropy uses `a` only; the pair statistics use both.
struct SignalSelector {
    std::string a;
    std::optional<std::string> b;
};

/// Raw position component of one element as a series (NaN where absent).
TimeSeries position_series(const Recording& recording, const std::string& id, Axis axis);

/// Centered windowed statistic with stride one frame over the whole recording;
/// frames without a full window are NaN.
///   Entropy            sum over `axes` of the per-axis position entropy
///   MutualInformation  sum over `axes` of per-axis MI between a and b
///   AverageDistance    windowed mean of the axis-restricted distance
///   EntropyOfDistance  sliding entropy of the AverageDistance series
TimeSeries sliding_series(const Recording& recording, const SignalSelector& selector, int w, Statistic statistic,
                          const PipelineConfig& config);

/// Lazily computed, memoized windowed statistics for one recording. Pair
/// statistics are symmetric and cached under the sorted pair.
class SignalBank {
public:
    SignalBank(const Recording& recording, const PipelineConfig& config);

    const Recording& recording() const { return recording_; }
    const PipelineConfig& config() const { return config_; }

    const TimeSeries& entropy(const std::string& id);
    const TimeSeries& mutual_information(const std::string& a, const std::string& b);
    const TimeSeries& average_distance(const std::string& a, const std::string& b);
    const TimeSeries& entropy_of_distance(const std::string& a, const std::string& b);

    /// Per-axis position entropy is zero on every configured axis.
    bool stationary(const std::string& id, Frame k);

private:
    const TimeSeries& pair_series(Statistic s, const std::string& a, const std::string& b);

    const Recording& recording_;
    PipelineConfig config_;
    std::map<std::string, TimeSeries> entropy_;
    std::map<std::tuple<Statistic, std::string, std::string>, TimeSeries> pairs_;
};

} // namespace infoplan
