#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include <gtest/gtest.h>

#include "illposed/io.hpp"

using namespace illposed;
namespace fs = std::filesystem;

namespace {
class IoTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() / ("illposed_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write(const std::string& name, const std::string& text) const
    {
        std::ofstream(path(name)) << text;
        return path(name);
    }

    fs::path dir_;
};
} // namespace

TEST(Fmt, RoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        EXPECT_EQ(std::stod(io::fmt(v)), v);
    }
    EXPECT_EQ(io::fmt(0.5), "0.5");
}

TEST_F(IoTest, SignalRoundTrip)
{
    const auto s = stablediff::SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0,
                                                            2.0 * std::numbers::pi, 64, 1e-3);
    io::write_signal(path("s.txt"), s);
    const auto r = io::read_signal(path("s.txt"));
    EXPECT_EQ(r.values(), s.values());
    EXPECT_EQ(r.dx(), s.dx());
    EXPECT_EQ(r.delta(), s.delta());
}

TEST_F(IoTest, SignalErrors)
{
    const auto bad_period = write("a.txt", "# 0 0.5 3 0.1\n1\n2\n3\n");
    try {
        io::read_signal(bad_period);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field_name, "period");
        EXPECT_EQ(e.line_number, 1u);
    }
    const auto bad_value = write("b.txt", "# 0 1 3 0.1\n1\nx\n3\n");
    try {
        io::read_signal(bad_value);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.field_name, "value");
        EXPECT_EQ(e.line_number, 3u);
    }
    EXPECT_THROW(io::read_signal(write("c.txt", "1\n2\n")), ParseError);
    EXPECT_THROW(io::read_signal(write("d.txt", "# 0 1 2\n1\n2\n")), ParseError);
    EXPECT_THROW(io::read_signal(path("missing.txt")), ParseError);
    // key=value header tokens are accepted when the key matches
    EXPECT_EQ(io::read_signal(write("e.txt", "# x0=0 dx=1 period=2 delta=0.5\n1\n2\n")).delta(), 0.5);
    EXPECT_THROW(io::read_signal(write("f.txt", "# x0=0 dy=1 period=2 delta=0.5\n1\n2\n")), ParseError);
}

TEST_F(IoTest, SpectralRoundTrip)
{
    const auto w = specext::SpectralWindow<2>::truncated_cone(0.5, 2.0, 3, 4.0, 1, 4);
    specext::SpectralSamples<2> s{w.nodes(), {}};
    for (std::size_t i = 0; i < w.size(); ++i)
        s.values.emplace_back(std::sqrt(double(i)), -1.0 / (1.0 + i));
    io::write_spectral_samples(path("x.txt"), w, s);
    const auto f = io::read_spectral_samples(path("x.txt"));
    EXPECT_EQ(f.dim, 2u);
    EXPECT_EQ(f.shape, "cone");
    EXPECT_EQ(f.params, w.params());
    const auto back = io::to_samples<2>(f, "x");
    EXPECT_EQ(back.nodes, s.nodes);
    EXPECT_EQ(back.values, s.values);
    EXPECT_THROW(io::to_samples<1>(f, "x"), ParseError);
    EXPECT_THROW(io::read_spectral_samples(write("y.txt", "# 1 interval -1 1\n0.5 1\n")), ParseError);
    EXPECT_THROW(io::read_spectral_samples(write("z.txt", "# 1 polygon\n")), ParseError);
}

TEST_F(IoTest, FieldRoundTrip)
{
    const auto g = radon::Grid2D::square(1.0, 3);
    std::vector<std::complex<double>> v;
    for (int i = 0; i < 9; ++i)
        v.emplace_back(0.1 * i, -0.3 * i);
    io::write_field(path("f.txt"), g, v);
    const auto f = io::read_field(path("f.txt"));
    EXPECT_EQ(f.values, v);
    EXPECT_EQ(f.grid.nx, 3u);
    EXPECT_EQ(f.grid.dx, g.dx);
    EXPECT_THROW(io::write_field(path("g.txt"), g, {}), ConfigError);
    EXPECT_THROW(io::read_field(write("h.txt", "# 2 2 0 0 1 1\n1 0\n")), ParseError);
}

TEST_F(IoTest, SinogramRoundTrip)
{
    const radon::Phantom ph({{{0.1, 0.0}, 0.5, 1.0}}, 1.0);
    const auto s = radon::radon_transform(ph, radon::AngularSector(0.2, 1.7, 4), 17);
    io::write_sinogram(path("s.txt"), s);
    const auto r = io::read_sinogram(path("s.txt"));
    EXPECT_EQ(r.values, s.values);
    EXPECT_EQ(r.sector.count, 4u);
    EXPECT_EQ(r.sector.alpha_max, s.sector.alpha_max);
    EXPECT_EQ(r.dp, s.dp);
    EXPECT_THROW(io::read_sinogram(write("t.txt", "# 0 1 0 -1 1 3\n")), ParseError);
    EXPECT_THROW(io::read_sinogram(write("u.txt", "# 0 1 1 -1 1 3\n1\n2\n")), ParseError);
}
