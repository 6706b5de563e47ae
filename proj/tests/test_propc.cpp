#include <cmath>

#include <gtest/gtest.h>

#include "illposed/propc.hpp"

using namespace illposed;
using namespace illposed::propc;

TEST(HarmonicBasis, Layout)
{
    const HarmonicBasis2D b(3);
    EXPECT_EQ(b.size(), 7u);
    const auto v = b.evaluate(0.5, -0.25);
    EXPECT_DOUBLE_EQ(v[0], 1.0);
    EXPECT_DOUBLE_EQ(v[1], 0.5);
    EXPECT_DOUBLE_EQ(v[2], -0.25);
    EXPECT_NEAR(v[3], 0.25 - 0.0625, 1e-15);
    EXPECT_NEAR(v[4], -0.25, 1e-15);
    EXPECT_EQ(b.name(4), "Im z^2");
    EXPECT_THROW(HarmonicBasis2D(-1), ConfigError);
    EXPECT_THROW(b.evaluate(7, 0.0, 0.0), ConfigError);
}

TEST(HarmonicBasis, Harmonic)
{
    const HarmonicBasis2D b(8);
    for (std::size_t i = 0; i < b.size(); ++i)
        EXPECT_LT(harmonic_residual(b, i), 1e-5) << b.name(i);
}

TEST(DiscQuadrature, Moments)
{
    const auto q = DiscQuadrature::make(20, 40);
    double area = 0.0, r2 = 0.0, x1 = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        area += q.w[i];
        r2 += q.w[i] * (q.x1[i] * q.x1[i] + q.x2[i] * q.x2[i]);
        x1 += q.w[i] * q.x1[i];
    }
    EXPECT_NEAR(area, std::numbers::pi, 1e-13);
    EXPECT_NEAR(r2, std::numbers::pi / 2.0, 1e-13);
    EXPECT_NEAR(x1, 0.0, 1e-14);
    EXPECT_THROW(DiscQuadrature::make(0, 4), ConfigError);
}

TEST(Products, ExactFixtures)
{
    const auto q = DiscQuadrature::make();
    // x1 = x1 * 1 and |x|^2 = x1*x1 + x2*x2 lie in the product span at N = 1
    const auto fx = approximate_by_products(q.sample([](double x, double) { return x; }), q, {1});
    const auto fr = approximate_by_products(q.sample([](double x, double y) { return x * x + y * y; }), q, {1, 2});
    EXPECT_LT(fx[0].residual, 1e-12);
    EXPECT_LT(fr[0].residual, 1e-12);
    EXPECT_LT(fr[1].residual, 1e-12);
    EXPECT_EQ(fr[0].dictionary_size, 6u);
    EXPECT_TRUE(fr[1].truncated_svd); // products at N = 2 are linearly dependent
    EXPECT_LT(fr[1].effective_rank, fr[1].dictionary_size);
}

TEST(Products, ResidualDecreasesForExpCos)
{
    const auto q = DiscQuadrature::make();
    const auto f = q.sample([](double x, double y) { return std::exp(x) * std::cos(3.0 * y); });
    const auto fits = approximate_by_products(f, q, {1, 2, 4, 6, 8});
    const double expect[] = {0.406, 0.133, 0.0119, 7.4e-4, 3.0e-5};
    for (std::size_t i = 0; i < fits.size(); ++i) {
        EXPECT_NEAR(fits[i].residual, expect[i], 0.03 * expect[i]) << "N=" << fits[i].degree;
        if (i > 0) {
            EXPECT_LT(fits[i].residual, fits[i - 1].residual);
        }
    }
}

TEST(Products, Validation)
{
    const auto q = DiscQuadrature::make(4, 8);
    EXPECT_THROW(approximate_by_products(std::vector<double>(3, 1.0), q, {1}), ConfigError);
    EXPECT_THROW(approximate_by_products(std::vector<double>(q.size(), 0.0), q, {1}), ConfigError);
}

TEST(ComplexDirection, SelfDotIsOne)
{
    for (double t : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const ComplexDirection d(t);
        EXPECT_NEAR(std::abs(d.self_dot() - cplx(1.0, 0.0)), 0.0, 1e-12 * std::cosh(2.0 * t));
        EXPECT_NEAR(std::abs(d.psi(0.7, -0.2)), std::exp(-0.7 * std::sinh(t)), 1e-13);
    }
    EXPECT_THROW(ComplexDirection(-1.0), DomainError);
}

TEST(Herglotz, NormGrowsWithTAndAccuracy)
{
    const auto q = DiscQuadrature::make();
    const std::vector<double> eps{1e-1, 3e-2, 1e-2, 3e-3};
    const auto rows = blowup_study({0.0, 1.0}, eps, 64, q);
    ASSERT_EQ(rows.size(), 8u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.feasible);
        EXPECT_LE(r.residual, r.target * (1.0 + 1e-9));
    }
    const double at1[] = {8.6, 23.4, 48.0, 63.7};
    for (std::size_t k = 0; k < eps.size(); ++k) {
        EXPECT_NEAR(rows[4 + k].coeff_norm, at1[k], 0.02 * at1[k]);
        EXPECT_GT(rows[4 + k].coeff_norm, rows[k].coeff_norm);
        if (k > 0) {
            EXPECT_GE(rows[k].coeff_norm, rows[k - 1].coeff_norm);
            EXPECT_GE(rows[4 + k].coeff_norm, rows[4 + k - 1].coeff_norm);
        }
    }
}

TEST(Herglotz, UnreachableTargetFlagged)
{
    const auto q = DiscQuadrature::make(10, 20);
    const auto sols = herglotz_match(ComplexDirection(2.0), 4, {1e-12}, q);
    EXPECT_FALSE(sols[0].feasible);
    EXPECT_THROW(herglotz_match(ComplexDirection(0.0), 0, {0.1}, q), ConfigError);
}

TEST(Herglotz, Reproducible)
{
    const auto q = DiscQuadrature::make(12, 24);
    const auto a = herglotz_match(ComplexDirection(0.5), 16, {1e-2}, q);
    const auto b = herglotz_match(ComplexDirection(0.5), 16, {1e-2}, q);
    EXPECT_EQ(a[0].coeff_norm, b[0].coeff_norm);
    EXPECT_EQ(a[0].coefficients, b[0].coefficients);
}
