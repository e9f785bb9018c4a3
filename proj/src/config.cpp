#include "infoplan/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace infoplan {

std::string to_string(ElementKind kind)
{
    return kind == ElementKind::Hand ? "hand" : "object";
}

ElementKind element_kind_from_string(const std::string& text)
{
    if (text == "hand") {
        return ElementKind::Hand;
    }
    if (text == "object") {
        return ElementKind::Object;
    }
    throw std::invalid_argument("unknown element kind '" + text + "'");
}

void PipelineConfig::validate() const
{
    if (sample_rate <= 0) {
        throw std::invalid_argument("sample_rate must be positive");
    }
    if (window_samples < 4 || window_samples % 2 != 0) {
        throw std::invalid_argument("window_samples must be even and >= 4");
    }
    if (!(quantization > 0)) {
        throw std::invalid_argument("quantization must be positive");
    }
    if (!(mi_epsilon > 0)) {
        throw std::invalid_argument("mi_epsilon must be positive");
    }
    if (!(d_ho_threshold > 0) || !(d_oo_threshold > 0)) {
        throw std::invalid_argument("distance thresholds must be positive");
    }
    if (trend_horizon < 1) {
        throw std::invalid_argument("trend_horizon must be >= 1");
    }
    if (axes.empty()) {
        throw std::invalid_argument("axes must be nonempty");
    }
    if (!(angle_threshold_deg > 0) || angle_threshold_deg > 180) {
        throw std::invalid_argument("angle_threshold must be in (0, 180]");
    }
    if (max_gap_frames < 0) {
        throw std::invalid_argument("max_gap_frames must be >= 0");
    }
    if (complexity_tolerance < 0) {
        throw std::invalid_argument("complexity_tolerance must be >= 0");
    }
}

int window_samples_from_seconds(double seconds, double sample_rate)
{
    if (!(seconds > 0) || !(sample_rate > 0)) {
        throw std::invalid_argument("window seconds and sample rate must be positive");
    }
    auto n = static_cast<int>(std::lround(seconds * sample_rate));
    if (n % 2 != 0) {
        ++n;
    }
    return n;
}

std::string axes_to_string(const std::vector<Axis>& axes)
{
    std::string out;
    for (Axis a : axes) {
        out += "xyz"[static_cast<int>(a)];
    }
    return out;
}

std::vector<Axis> axes_from_string(const std::string& text)
{
    std::vector<Axis> out;
    for (char c : text) {
        Axis a;
        switch (c) {
        case 'x': a = Axis::X; break;
        case 'y': a = Axis::Y; break;
        case 'z': a = Axis::Z; break;
        case ',':
        case ' ': continue;
        default: throw std::invalid_argument(std::string("unknown axis '") + c + "'");
        }
        for (Axis seen : out) {
            if (seen == a) {
                throw std::invalid_argument("duplicate axis in '" + text + "'");
            }
        }
        out.push_back(a);
    }
    if (out.empty()) {
        throw std::invalid_argument("axes must be nonempty");
    }
    return out;
}

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
    if (used != value.size()) {
        throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value)
{
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + value + "'");
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1" || value == "on") {
        return true;
    }
    if (value == "false" || value == "0" || value == "off") {
        return false;
    }
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + value + "'");
}

} // namespace

PipelineConfig apply_overrides(PipelineConfig config, const std::map<std::string, std::string>& values)
{
    std::optional<double> window_seconds;
    bool have_samples = false;
    bool have_horizon = false;
    for (const auto& [key, value] : values) {
        if (key == "sample_rate") {
            config.sample_rate = parse_double(key, value);
        } else if (key == "window_samples") {
            config.window_samples = parse_int(key, value);
            have_samples = true;
        } else if (key == "window_seconds") {
            window_seconds = parse_double(key, value);
        } else if (key == "quantization") {
            config.quantization = parse_double(key, value);
        } else if (key == "mi_epsilon") {
            config.mi_epsilon = parse_double(key, value);
        } else if (key == "d_ho_threshold") {
            config.d_ho_threshold = parse_double(key, value);
        } else if (key == "d_oo_threshold") {
            config.d_oo_threshold = parse_double(key, value);
        } else if (key == "trend_horizon") {
            config.trend_horizon = parse_int(key, value);
            have_horizon = true;
        } else if (key == "axes") {
            config.axes = axes_from_string(value);
        } else if (key == "angle_threshold") {
            config.angle_threshold_deg = parse_double(key, value);
        } else if (key == "max_gap_frames") {
            config.max_gap_frames = parse_int(key, value);
        } else if (key == "complexity_tolerance") {
            config.complexity_tolerance = parse_double(key, value);
        } else if (key == "filter_temporary") {
            config.filter_temporary = parse_bool(key, value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    if (window_seconds && !have_samples) {
        config.window_samples = window_samples_from_seconds(*window_seconds, config.sample_rate);
    }
    if ((have_samples || window_seconds) && !have_horizon) {
        config.trend_horizon = config.window_samples / 2;
    }
    config.validate();
    return config;
}

PipelineConfig parse_config(const std::string& text)
{
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (values.count(key) != 0) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        values[key] = trim(line.substr(eq + 1));
    }
    return apply_overrides(PipelineConfig{}, values);
}

PipelineConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const PipelineConfig& c)
{
    std::ostringstream out;
    out.precision(17);
    out << "sample_rate = " << c.sample_rate << '\n'
        << "window_samples = " << c.window_samples << '\n'
        << "quantization = " << c.quantization << '\n'
        << "mi_epsilon = " << c.mi_epsilon << '\n'
        << "d_ho_threshold = " << c.d_ho_threshold << '\n'
        << "d_oo_threshold = " << c.d_oo_threshold << '\n'
        << "trend_horizon = " << c.trend_horizon << '\n'
        << "axes = " << axes_to_string(c.axes) << '\n'
        << "angle_threshold = " << c.angle_threshold_deg << '\n'
        << "max_gap_frames = " << c.max_gap_frames << '\n'
        << "complexity_tolerance = " << c.complexity_tolerance << '\n'
        << "filter_temporary = " << (c.filter_temporary ? "true" : "false") << '\n';
    return out.str();
}

} // namespace infoplan
