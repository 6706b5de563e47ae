#include <cmath>

#include <gtest/gtest.h>

#include "illposed/noise.hpp"

using namespace illposed;
using stablediff::SampledSignal;

namespace {
SampledSignal zeros(std::size_t n) { return SampledSignal(std::vector<double>(n, 0.0), 0.0, 0.1); }
}

TEST(Noise, Parse)
{
    EXPECT_EQ(parse_noise_pattern("uniform"), NoisePattern::uniform);
    EXPECT_EQ(parse_noise_pattern("alternating"), NoisePattern::alternating);
    EXPECT_EQ(parse_noise_pattern("square"), NoisePattern::square);
    EXPECT_EQ(to_string(NoisePattern::square), "square");
    EXPECT_THROW(parse_noise_pattern("gauss"), ConfigError);
}

TEST(Noise, UniformBoundedAndDeterministic)
{
    const auto a = synth_noise(zeros(5000), 0.25, 42, NoisePattern::uniform);
    const auto b = synth_noise(zeros(5000), 0.25, 42, NoisePattern::uniform);
    const auto c = synth_noise(zeros(5000), 0.25, 43, NoisePattern::uniform);
    EXPECT_EQ(a.values(), b.values());
    EXPECT_NE(a.values(), c.values());
    EXPECT_DOUBLE_EQ(a.delta(), 0.25);
    double mx = 0.0, mean = 0.0;
    for (double v : a.values()) {
        mx = std::max(mx, std::abs(v));
        mean += v / 5000.0;
    }
    EXPECT_LE(mx, 0.25);
    EXPECT_GT(mx, 0.24);
    EXPECT_NEAR(mean, 0.0, 0.02);
}

TEST(Noise, UnitUniformRange)
{
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = unit_uniform(rng);
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

TEST(Noise, Patterns)
{
    const auto alt = synth_noise(zeros(8), 1.0, 0, NoisePattern::alternating);
    EXPECT_EQ(alt.values(), (std::vector<double>{1, -1, 1, -1, 1, -1, 1, -1}));
    const auto sq = synth_noise(zeros(8), 1.0, 0, NoisePattern::square, 2);
    EXPECT_EQ(sq.values(), (std::vector<double>{1, 1, -1, -1, 1, 1, -1, -1}));
}

TEST(Noise, SquarePatternAttainsWorstCase)
{
    // with blocks of 2k samples, f(x+h) - f(x-h) = -2 delta at half of the grid
    const std::size_t k = 5;
    const auto s = synth_noise(zeros(400), 1e-3, 0, NoisePattern::square, 2 * k);
    const double h = static_cast<double>(k) * s.dx();
    std::size_t worst = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto ii = static_cast<long long>(i);
        const auto kk = static_cast<long long>(k);
        const double d = std::abs(s.at_index(ii + kk) - s.at_index(ii - kk)) / (2.0 * h);
        EXPECT_LE(d, 1e-3 / h * (1.0 + 1e-12));
        worst += d > 0.999e-3 / h ? 1 : 0;
    }
    EXPECT_GE(worst, s.size() / 2);
}

TEST(Noise, ZeroDeltaIsIdentity)
{
    const SampledSignal s({1.0, 2.0, 3.0}, 0.0, 1.0, 0.5);
    const auto t = synth_noise(s, 0.0, 9, NoisePattern::uniform);
    EXPECT_EQ(t.values(), s.values());
    EXPECT_THROW(synth_noise(s, -1.0, 9, NoisePattern::uniform), DomainError);
}
