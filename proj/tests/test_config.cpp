#include "infoplan/config.hpp"

#include <gtest/gtest.h>

using namespace infoplan;

TEST(Config, DefaultsAreTheDeskSetup)
{
    const PipelineConfig c;
    EXPECT_EQ(c.sample_rate, 30.0);
    EXPECT_EQ(c.window_samples, 40);
    EXPECT_EQ(c.quantization, 0.01);
    EXPECT_EQ(c.mi_epsilon, 0.05);
    EXPECT_EQ(c.d_ho_threshold, 0.15);
    EXPECT_EQ(c.d_oo_threshold, 0.2);
    EXPECT_EQ(c.trend_horizon, 20);
    EXPECT_EQ(c.axes, (std::vector<Axis>{Axis::X, Axis::Y}));
    EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesTheDocumentedParametersVerbatim)
{
    const auto c = parse_config("# desk setup\n"
                                "sample_rate = 30\n"
                                "window_samples = 40\n"
                                "quantization = 0.01\n"
                                "mi_epsilon = 0.05\n"
                                "d_ho_threshold = 0.15\n"
                                "d_oo_threshold = 0.2   # trailing comment\n");
    const PipelineConfig d;
    EXPECT_EQ(serialize_config(c), serialize_config(d));
}

TEST(Config, SerializationRoundTrips)
{
    PipelineConfig c;
    c.sample_rate = 120;
    c.window_samples = 64;
    c.quantization = 0.005;
    c.axes = {Axis::X, Axis::Y, Axis::Z};
    c.filter_temporary = false;
    c.complexity_tolerance = 0.03;
    const auto back = parse_config(serialize_config(c));
    EXPECT_EQ(serialize_config(back), serialize_config(c));
    EXPECT_EQ(back.axes.size(), 3u);
    EXPECT_FALSE(back.filter_temporary);
}

TEST(Config, WindowSecondsRoundsToEvenSamples)
{
    EXPECT_EQ(window_samples_from_seconds(1.3, 30.0), 40);
    EXPECT_EQ(window_samples_from_seconds(1.0, 30.0), 30);
    EXPECT_EQ(window_samples_from_seconds(1.0 / 30.0 * 41, 30.0), 42);
    const auto c = parse_config("window_seconds = 2\n");
    EXPECT_EQ(c.window_samples, 60);
    EXPECT_EQ(c.trend_horizon, 30);
    // Samples take precedence; an explicit horizon is kept.
    const auto both = parse_config("window_seconds = 2\nwindow_samples = 20\ntrend_horizon = 7\n");
    EXPECT_EQ(both.window_samples, 20);
    EXPECT_EQ(both.trend_horizon, 7);
}

TEST(Config, RejectsMalformedInput)
{
    EXPECT_THROW(parse_config("unknown_key = 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("quantization\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("quantization = 0.01\nquantization = 0.02\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("quantization = abc\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("quantization = 0.01m\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("quantization = -1\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("window_samples = 41\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("window_samples = 40.5\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("axes = xw\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("axes = xx\n"), std::invalid_argument);
    EXPECT_THROW(parse_config("filter_temporary = maybe\n"), std::invalid_argument);
    EXPECT_THROW(load_config("/nonexistent/infoplan.conf"), std::runtime_error);
}

TEST(Config, OverridesApplyOnTopOfABase)
{
    PipelineConfig base;
    base.quantization = 0.02;
    const auto c = apply_overrides(base, {{"mi_epsilon", "0.1"}, {"axes", "x,z"}});
    EXPECT_EQ(c.quantization, 0.02);
    EXPECT_EQ(c.mi_epsilon, 0.1);
    EXPECT_EQ(axes_to_string(c.axes), "xz");
}
