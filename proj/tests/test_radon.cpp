#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "illposed/radon.hpp"

using namespace illposed;
using namespace illposed::radon;

namespace {
const double pi = std::numbers::pi;

Phantom unit_disc() { return Phantom({{{0.0, 0.0}, 1.0, 1.0}}, 1.0); }
Phantom two_discs() { return Phantom({{{0.3, -0.2}, 0.5, 1.0}, {{-0.4, 0.3}, 0.3, 0.5}}, 1.0); }
} // namespace

TEST(Sector, Validation)
{
    EXPECT_THROW(AngularSector(0.0, 1.0, 0), ConfigError);
    EXPECT_THROW(AngularSector(1.0, 0.5, 4), ConfigError);
    EXPECT_THROW(AngularSector(0.0, 4.0, 4), ConfigError);
    const AngularSector s(0.0, pi / 2.0, 4);
    EXPECT_NEAR(s.direction(0), pi / 16.0, 1e-15);
    EXPECT_NEAR(s.direction(3), 7.0 * pi / 16.0, 1e-15);
}

TEST(Phantom, SupportChecked)
{
    EXPECT_THROW(Phantom({{{0.8, 0.0}, 0.5, 1.0}}, 1.0), GeometryError);
    EXPECT_THROW(Phantom({{{0.0, 0.0}, 0.0, 1.0}}, 1.0), ConfigError);
}

TEST(Phantom, ChordFixtures)
{
    const auto ph = unit_disc();
    EXPECT_NEAR(ph.chord_integral(0.0, 0.0), 2.0, 1e-15);
    EXPECT_NEAR(ph.chord_integral(1.0, 0.6), 1.6, 1e-15);
    EXPECT_NEAR(ph.line_integral(0.0, 0.0), 2.0, 1e-13);
    EXPECT_NEAR(ph.line_integral(1.0, 0.6), 1.6, 1e-13);
    EXPECT_EQ(ph.chord_integral(0.0, 1.2), 0.0);
}

TEST(Phantom, LineIntegralMatchesChordOnComposite)
{
    const auto ph = two_discs();
    for (double al : {0.1, 0.9, 2.3})
        for (double p = -0.95; p < 1.0; p += 0.1)
            EXPECT_NEAR(ph.line_integral(al, p), ph.chord_integral(al, p), 1e-12);
}

TEST(Phantom, FourierAtZeroIsMass)
{
    const auto ph = two_discs();
    EXPECT_NEAR(ph.fourier({0.0, 0.0}).real(), ph.mass(), 1e-14);
    EXPECT_NEAR(ph.mass(), pi * (0.25 + 0.5 * 0.09), 1e-15);
}

TEST(Phantom, RasterizeMass)
{
    const auto ph = unit_disc();
    const auto g = Grid2D::square(1.0, 101);
    const auto v = rasterize(ph, g);
    double m = 0.0;
    for (double x : v)
        m += x * g.dx * g.dy;
    EXPECT_NEAR(m, pi, 5e-3);
}

TEST(Sinogram, SliceAtZeroIsMass)
{
    const auto s = radon_transform(unit_disc(), AngularSector(0.0, pi, 4), 513);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_NEAR(slice_to_fourier(s, i, 0.0).real(), pi, 1e-3); // sqrt edge: O(dp^1.5)
}

TEST(Sinogram, MassIndependentOfDirection)
{
    // centered disc: identical rows
    const auto s = radon_transform(unit_disc(), AngularSector(0.0, pi, 7), 257);
    const double m0 = slice_to_fourier(s, 0, 0.0).real();
    for (std::size_t i = 1; i < 7; ++i)
        EXPECT_NEAR(slice_to_fourier(s, i, 0.0).real(), m0, 1e-12);
    const auto s2 = radon_transform(two_discs(), AngularSector(0.0, pi, 7), 1025);
    for (std::size_t i = 0; i < 7; ++i)
        EXPECT_NEAR(slice_to_fourier(s2, i, 0.0).real(), two_discs().mass(), 5e-4);
}

TEST(Sinogram, FourierSliceTheorem)
{
    const auto ph = two_discs();
    const AngularSector sec(0.2, 2.2, 5);
    const auto s = radon_transform(ph, sec, 513);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < sec.count; ++i)
        for (double t = -8.0; t <= 8.0; t += 0.5) {
            const double al = sec.direction(i);
            const cplx direct = ph.fourier({t * std::cos(al), t * std::sin(al)});
            worst = std::max(worst, std::abs(direct - slice_to_fourier(s, i, t)));
            peak = std::max(peak, std::abs(direct));
        }
    EXPECT_LT(worst / peak, 1e-3);
    EXPECT_THROW(slice_to_fourier(s, 0, 2.0 * s.band_limit()), ConfigError);
    EXPECT_THROW(slice_to_fourier(s, 5, 0.0), ConfigError);
}

TEST(Sinogram, Linearity)
{
    const Phantom a({{{0.2, 0.1}, 0.4, 2.0}}, 1.0);
    const Phantom b({{{-0.3, -0.3}, 0.3, -1.0}}, 1.0);
    const AngularSector sec(0.0, pi / 2.0, 6);
    const auto sa = radon_transform(a, sec, 65);
    const auto sb = radon_transform(b, sec, 65);
    const auto sab = radon_transform(a + b, sec, 65);
    for (std::size_t i = 0; i < sab.values.size(); ++i)
        EXPECT_NEAR(sab.values[i], sa.values[i] + sb.values[i], 1e-13);
}

TEST(Cone, FillMatchesClosedForm)
{
    const auto ph = two_discs();
    const AngularSector sec(pi / 6.0, 5.0 * pi / 6.0, 16);
    const auto s = radon_transform(ph, sec, 513);
    const auto cone = fill_spectral_cone(s, 8.0, 2, 8);
    ASSERT_EQ(cone.samples.values.size(), cone.window.size());
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < cone.window.size(); ++i) {
        const cplx direct = ph.fourier(cone.window.nodes()[i]);
        worst = std::max(worst, std::abs(direct - cone.samples.values[i]));
        peak = std::max(peak, std::abs(direct));
    }
    EXPECT_LT(worst / peak, 2e-3);
    EXPECT_THROW(fill_spectral_cone(s, 10.0 * s.band_limit()), ConfigError);
}

TEST(Reconstruct, ZeroDataGivesZeroImage)
{
    const AngularSector sec(pi / 6.0, 5.0 * pi / 6.0, 8);
    Sinogram s = radon_transform(unit_disc(), sec, 65);
    std::fill(s.values.begin(), s.values.end(), 0.0);
    const auto cfg = cone_config(sec, 4.0, 2, 1.0);
    const auto res = limited_angle_reconstruct(s, cfg, 4.0, Grid2D::square(1.0, 5).points(), 2, 8);
    for (const auto& v : res.values)
        EXPECT_EQ(std::abs(v), 0.0);
}

TEST(Reconstruct, FullAngleLowJIsBlurredImage)
{
    // full data: f_j = f * delta_j; mass is preserved approximately at the center
    const auto ph = Phantom({{{0.0, 0.0}, 0.6, 1.0}}, 1.0);
    const AngularSector sec(0.0, pi, 48);
    const auto s = radon_transform(ph, sec, 257);
    const auto cfg = cone_config(sec, 12.0, 1, 1.0);
    EXPECT_NEAR(cfg.mollifier.radius(), 12.0, 1e-12);
    const auto res = limited_angle_reconstruct(s, cfg, 12.0, {{0.0, 0.0}, {0.95, 0.0}}, 4, 16);
    EXPECT_TRUE(res.feasible());
    EXPECT_LT(res.max_imag, 1e-6);
    EXPECT_GT(res.values[0].real(), res.values[1].real());
}
