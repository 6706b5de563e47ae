#include <cmath>

#include <gtest/gtest.h>

#include "illposed/bump.hpp"

using namespace illposed;

TEST(Bump, Profile)
{
    EXPECT_NEAR(bump_profile(0.0), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(bump_profile(0.5), std::exp(-2.0), 1e-16);
    EXPECT_EQ(bump_profile(1.0), 0.0);
    EXPECT_EQ(bump_profile(3.0), 0.0);
    EXPECT_GT(bump_profile(0.99), 0.0);
}

TEST(BumpSeries, ConstantIsProfile)
{
    const BumpSeries b(1.0L);
    for (double s : {0.0, 0.3, 0.9, 0.99})
        EXPECT_NEAR(static_cast<double>(b(s)), bump_profile(s), 1e-15);
    EXPECT_EQ(b(1.0L), 0.0L);
}

TEST(BumpSeries, DerivativeMatchesFiniteDifference)
{
    BumpSeries f(1.0L);
    for (int order = 1; order <= 4; ++order) {
        const BumpSeries g = f.derivative();
        for (long double s : {0.1L, 0.4L, 0.7L}) {
            const long double e = 1e-6L;
            const long double fd = (f(s + e) - f(s - e)) / (2.0L * e);
            EXPECT_NEAR(static_cast<double>(g(s)), static_cast<double>(fd), 1e-6 * (1.0 + std::abs((double)fd)))
                << "order " << order << " s " << static_cast<double>(s);
        }
        f = g;
    }
}

TEST(BumpSeries, TimesSAndArithmetic)
{
    const BumpSeries b(2.0L);
    BumpSeries t = b.times_s();
    for (long double s : {0.0L, 0.25L, 0.8L})
        EXPECT_NEAR(static_cast<double>(t(s)), static_cast<double>(2.0L * s * std::exp(-1.0L / (1.0L - s))), 1e-15);
    t += b;
    t *= 0.5L;
    EXPECT_NEAR(static_cast<double>(t(0.25L)), static_cast<double>(1.25L * std::exp(-1.0L / 0.75L)), 1e-15);
    EXPECT_GE(t.magnitude(0.25L), std::abs(t(0.25L)));
}

TEST(NegLaplacian, OneDimensionalFiniteDifference)
{
    // -d^2/dx^2 phi(x^2 / r^2) in 1D
    const double r = 1.7;
    const auto pw = neg_laplacian_powers(2, 1, r);
    ASSERT_EQ(pw.size(), 3u);
    auto f = [&](long double x) { return pw[0](x * x / (r * r)); };
    for (long double x : {0.0L, 0.3L, 0.9L, 1.4L}) {
        const long double e = 1e-4L;
        const long double fd = -(f(x + e) - 2.0L * f(x) + f(x - e)) / (e * e);
        EXPECT_NEAR(static_cast<double>(pw[1](x * x / (r * r))), static_cast<double>(fd), 1e-6);
    }
    auto g = [&](long double x) { return pw[1](x * x / (r * r)); };
    for (long double x : {0.2L, 0.8L}) {
        const long double e = 1e-3L;
        const long double fd = -(g(x + e) - 2.0L * g(x) + g(x - e)) / (e * e);
        EXPECT_NEAR(static_cast<double>(pw[2](x * x / (r * r))), static_cast<double>(fd), 1e-4 * (1.0 + std::abs((double)fd)));
    }
}

TEST(NegLaplacian, TwoDimensionalFiniteDifference)
{
    const double r = 1.0;
    const auto pw = neg_laplacian_powers(1, 2, r);
    auto f = [&](long double x, long double y) { return pw[0](x * x + y * y); };
    const long double e = 1e-4L;
    for (auto [x, y] : {std::pair{0.1L, 0.2L}, std::pair{0.5L, -0.3L}}) {
        const long double lap = (f(x + e, y) + f(x - e, y) + f(x, y + e) + f(x, y - e) - 4.0L * f(x, y)) / (e * e);
        EXPECT_NEAR(static_cast<double>(pw[1](x * x + y * y)), static_cast<double>(-lap), 1e-6);
    }
}
