#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "illposed/stablediff.hpp"

using namespace illposed;
using namespace illposed::stablediff;

TEST(Step, SecondOrderValues)
{
    EXPECT_NEAR(optimal_step(0.02, {2.0, 1.0}), 0.2, 1e-15);
    EXPECT_NEAR(optimal_step(0.5, {2.0, 1.0}), 1.0, 1e-15);
    EXPECT_NEAR(error_bound(0.02, {2.0, 1.0}), 0.2, 1e-15);
    EXPECT_NEAR(step_bound(0.02, {2.0, 1.0}, 0.2), 0.2, 1e-15);
}

TEST(Step, HolderValues)
{
    const SmoothnessClass c(1.5, 1.0);
    EXPECT_NEAR(optimal_step(1.0, c), std::pow(2.0, 2.0 / 3.0), 1e-14);
    // 1.5 * 2^(1/3): independent closed form of c_j at j = 3/2
    EXPECT_NEAR(error_bound(1.0, c), 1.5 * std::cbrt(2.0), 1e-14);
    EXPECT_NEAR(error_bound(1.0, c), 1.8899, 1e-4);
    EXPECT_NEAR(step_bound(1.0, c, optimal_step(1.0, c)), error_bound(1.0, c), 1e-13);
}

TEST(Step, OptimalIsMinimizer)
{
    for (double j : {1.1, 1.25, 1.5, 1.75, 2.0})
        for (double delta : {1e-6, 1e-3, 0.1}) {
            const SmoothnessClass c(j, 2.5);
            const double h = optimal_step(delta, c);
            const double b = step_bound(delta, c, h);
            EXPECT_GT(step_bound(delta, c, 0.9 * h), b);
            EXPECT_GT(step_bound(delta, c, 1.1 * h), b);
        }
}

TEST(Step, ErrorVanishesWithDelta)
{
    const SmoothnessClass c(1.5, 1.0);
    double prev = 1e300;
    for (double delta = 1e-1; delta > 1e-12; delta /= 10.0) {
        const double e = error_bound(delta, c);
        EXPECT_LT(e, prev);
        prev = e;
    }
    EXPECT_NEAR(std::log10(error_bound(1e-4, c) / error_bound(1e-6, c)), 2.0 / 3.0, 1e-12);
}

TEST(Smoothness, DomainChecks)
{
    EXPECT_THROW(SmoothnessClass(1.0, 1.0), DomainError);
    EXPECT_THROW(SmoothnessClass(0.5, 1.0), DomainError);
    EXPECT_THROW(SmoothnessClass(2.5, 1.0), DomainError);
    EXPECT_THROW(SmoothnessClass(1.5, 0.0), DomainError);
    EXPECT_THROW(optimal_step(0.0, {2.0, 1.0}), DomainError);
}

TEST(CentralDifference, SinAtZero)
{
    const auto s = SampledSignal::from_function([](double x) { return std::sin(x); }, -std::numbers::pi,
                                                2.0 * std::numbers::pi, 1000);
    const double h = 2.0 * std::numbers::pi / 1000.0 * 32.0;
    EXPECT_NEAR(central_difference(s, 0.0, h), std::sin(h) / h, 1e-14);
}

TEST(CentralDifference, SinRatioFixture)
{
    // dx = 0.05 on [0, 20); D_h sin(x) = cos(x) sin(h)/h and sin(0.2)/0.2 = 0.993347
    const auto s = SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0, 20.0, 400);
    EXPECT_NEAR(central_difference(s, 10.0, 0.2) / std::cos(10.0), 0.993347, 1e-6);
}

TEST(CentralDifference, ExactOnQuadratics)
{
    // periodic wrap is not involved away from the ends
    const auto s = SampledSignal::from_function([](double x) { return 3.0 * x * x - 2.0 * x + 1.0; }, 0.0, 10.0,
                                                1000);
    for (double x : {2.0, 5.0, 7.5})
        EXPECT_NEAR(central_difference(s, x, 0.3), 6.0 * x - 2.0, 1e-9);
    const auto lin = SampledSignal::from_function([](double x) { return 4.0 * x + 1.0; }, 0.0, 10.0, 1000);
    EXPECT_NEAR(central_difference(lin, 3.0, 0.05), 4.0, 1e-11);
}

TEST(CentralDifference, OffGridStepRejected)
{
    const auto s = SampledSignal::from_function([](double x) { return x; }, 0.0, 1.0, 100);
    EXPECT_THROW(central_difference(s, 0.5, 0.015), ConfigError);
    EXPECT_THROW(central_difference(s, 0.505, 0.02), ConfigError);
}

TEST(Differentiate, SnapsToGrid)
{
    auto s = SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0, 20.0, 400, 0.02);
    const auto r = differentiate(s, {2.0, 1.0});
    EXPECT_NEAR(r.h_ideal, 0.2, 1e-15);
    EXPECT_NEAR(r.h_used, 0.2, 1e-12);
    EXPECT_EQ(r.step_samples, 4);
    EXPECT_NEAR(r.snapping_slack, 0.0, 1e-12);
}

TEST(Differentiate, SlackNonnegativeAndCoarseGridRejected)
{
    const auto s = SampledSignal::from_function([](double x) { return std::cos(x); }, 0.0, 2.0 * std::numbers::pi,
                                                300, 1e-3);
    const auto r = differentiate(s, {1.5, 1.0});
    EXPECT_GE(r.snapping_slack, 0.0);
    EXPECT_GE(r.h_used, 0.5 * r.h_ideal);
    EXPECT_LE(r.h_used, 2.0 * r.h_ideal);
    const auto coarse = SampledSignal::from_function([](double x) { return std::cos(x); }, 0.0,
                                                     2.0 * std::numbers::pi, 8, 1e-8);
    EXPECT_THROW(differentiate(coarse, {2.0, 1.0}), ConfigError);
    EXPECT_THROW(differentiate(s.with_delta(0.0), {2.0, 1.0}), DomainError);
}

TEST(Differentiate, BoundHoldsUnderRandomNoise)
{
    const double delta = 1e-3;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-delta, delta);
    const auto clean = SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0,
                                                    2.0 * std::numbers::pi, 2048);
    std::vector<double> v = clean.values();
    for (double& x : v)
        x += u(rng);
    const SampledSignal noisy(v, clean.x0(), clean.dx(), delta);
    const auto r = differentiate(noisy, {2.0, 1.0});
    for (std::size_t i = 0; i < v.size(); ++i)
        EXPECT_LE(std::abs(r.derivative[i] - std::cos(noisy.abscissa(i))), r.bound);
}

TEST(Adversarial, Fixture)
{
    const auto p = adversarial_pair(1.0, 0.5);
    EXPECT_NEAR(p.h, 1.0, 1e-15);
    EXPECT_NEAR(p.f1(1.0), 0.5, 1e-15);
    EXPECT_NEAR(p.df1(0.0), 1.0, 1e-15);
    EXPECT_NEAR(p.df2(0.0), -1.0, 1e-15);
}

TEST(Adversarial, ClassMembership)
{
    for (double m : {0.5, 1.0, 4.0})
        for (double delta : {1e-4, 1e-2}) {
            const auto p = adversarial_pair(m, delta);
            double sup_f = 0.0;
            for (int i = -4000; i <= 4000; ++i) {
                const double x = i * p.h / 500.0;
                sup_f = std::max(sup_f, std::abs(p.f1(x)));
                EXPECT_NEAR(std::abs(p.d2f1(x)), m, 1e-15);
                // C^1: derivative matches a symmetric difference quotient
                const double e = 1e-6 * p.h;
                EXPECT_NEAR((p.f1(x + e) - p.f1(x - e)) / (2.0 * e), p.df1(x), 1e-6 * m * p.h + 1e-9);
            }
            EXPECT_LE(sup_f, delta * (1.0 + 1e-12));
            EXPECT_NEAR(sup_f, delta, 1e-12 * delta + 1e-18);
            EXPECT_NEAR(std::abs(p.df1(0.0) - p.df2(0.0)) / 2.0, std::sqrt(2.0 * delta * m), 1e-12);
        }
}

TEST(LowerBound, Values)
{
    // m = 2, delta = 1: h = 1, m h = 2
    EXPECT_NEAR(lower_bound_check(1.0, 2.0, 1.0), 3.0, 1e-15);
    EXPECT_NEAR(lower_bound_check(0.0, 2.0, 1.0), 2.0, 1e-15);
    EXPECT_NEAR(lower_bound_check(2.0, 2.0, 1.0), 4.0, 1e-15);
}

TEST(LowerBound, NeverBelowMinimax)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i)
        EXPECT_GE(lower_bound_check(u(rng), 1.5, 0.1), std::sqrt(2.0 * 0.1 * 1.5) - 1e-15);
}
