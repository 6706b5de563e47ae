#ifndef ILLPOSED_RADON_HPP
#define ILLPOSED_RADON_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "illposed/errors.hpp"
#include "illposed/quadrature.hpp"
#include "illposed/specext.hpp"

/// Limited-angle tomography on top of specext: Radon data on a sector of
/// directions gives the Fourier transform on a double cone.
namespace illposed::radon {

using specext::cplx;
using P2 = specext::Point<2>;

/// Directions alpha in [alpha_min, alpha_max], sampled at the `count`
/// midpoints. A width of pi covers every line once (full data).
struct AngularSector {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    std::size_t count = 0;

    AngularSector() = default;
    AngularSector(double lo, double hi, std::size_t n) : alpha_min(lo), alpha_max(hi), count(n) { validate(); }

    void validate() const
    {
        if (count == 0)
            throw ConfigError("angular sector: empty (no directions)");
        const double w = alpha_max - alpha_min;
        if (!(w > 0.0) || w > std::numbers::pi + 1e-12)
            throw ConfigError("angular sector: need 0 < alpha_max - alpha_min <= pi");
    }

    double width() const { return alpha_max - alpha_min; }
    double step() const { return width() / static_cast<double>(count); }
    double direction(std::size_t i) const { return alpha_min + (static_cast<double>(i) + 0.5) * step(); }
};

struct Disc {
    P2 center{};
    double radius = 1.0;
    double weight = 1.0;
};

/// Weighted sum of disc indicators, supported in B_a.
class Phantom {
public:
    Phantom() = default;
    Phantom(std::vector<Disc> discs, double a) : discs_(std::move(discs)), a_(a)
    {
        if (!(a > 0.0))
            throw ConfigError("phantom support radius must be positive");
        for (const auto& d : discs_) {
            if (!(d.radius > 0.0))
                throw ConfigError("phantom disc radius must be positive");
            if (specext::norm<2>(d.center) + d.radius > a + 1e-12)
                throw GeometryError("phantom disc not inside the support ball B_a");
        }
    }

    const std::vector<Disc>& discs() const { return discs_; }
    double support_radius() const { return a_; }

    double operator()(const P2& x) const
    {
        double v = 0.0;
        for (const auto& d : discs_)
            if (specext::norm<2>(specext::sub<2>(x, d.center)) < d.radius)
                v += d.weight;
        return v;
    }

    double mass() const
    {
        double m = 0.0;
        for (const auto& d : discs_)
            m += d.weight * std::numbers::pi * d.radius * d.radius;
        return m;
    }

    /// Closed-form line integral over {x : x.alpha = p}.
    double chord_integral(double alpha, double p) const
    {
        const P2 e{std::cos(alpha), std::sin(alpha)};
        double v = 0.0;
        for (const auto& d : discs_) {
            const double off = p - specext::dot<2>(d.center, e);
            if (std::abs(off) < d.radius)
                v += d.weight * 2.0 * std::sqrt(d.radius * d.radius - off * off);
        }
        return v;
    }

    /// Line integral by composite Gauss-Legendre along the line, with
    /// panel breaks at every disc boundary crossing.
    double line_integral(double alpha, double p, std::size_t order = 8) const
    {
        const P2 e{std::cos(alpha), std::sin(alpha)};
        const P2 n{-e[1], e[0]};
        std::vector<double> breaks{-a_, a_};
        for (const auto& d : discs_) {
            const double off = p - specext::dot<2>(d.center, e);
            if (std::abs(off) >= d.radius)
                continue;
            const double s0 = specext::dot<2>(d.center, n);
            const double hw = std::sqrt(d.radius * d.radius - off * off);
            breaks.push_back(std::clamp(s0 - hw, -a_, a_));
            breaks.push_back(std::clamp(s0 + hw, -a_, a_));
        }
        std::sort(breaks.begin(), breaks.end());
        const Rule r = composite_gauss_legendre(breaks, order);
        return r.integrate([&](double s) { return (*this)(P2{p * e[0] + s * n[0], p * e[1] + s * n[1]}); });
    }

    /// Closed-form transform: sum of w 2 pi r J1(r|xi|)/|xi| e^{i xi.c}.
    cplx fourier(const P2& xi) const
    {
        const double k = specext::norm<2>(xi);
        cplx acc = 0.0;
        for (const auto& d : discs_) {
            const double amp = (k * d.radius < 1e-8) ? std::numbers::pi * d.radius * d.radius
                                                     : 2.0 * std::numbers::pi * d.radius *
                                                           std::cyl_bessel_j(1.0, k * d.radius) / k;
            const double ph = specext::dot<2>(xi, d.center);
            acc += d.weight * amp * cplx(std::cos(ph), std::sin(ph));
        }
        return acc;
    }

    Phantom operator+(const Phantom& o) const
    {
        std::vector<Disc> d = discs_;
        d.insert(d.end(), o.discs_.begin(), o.discs_.end());
        return Phantom(std::move(d), std::max(a_, o.a_));
    }

private:
    std::vector<Disc> discs_;
    double a_ = 1.0;
};

/// Uniform evaluation grid x0 + i dx, y0 + k dy, row-major in y.
struct Grid2D {
    std::size_t nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, dx = 1.0, dy = 1.0;

    static Grid2D square(double half_width, std::size_t n)
    {
        if (n < 2)
            throw ConfigError("grid needs at least 2 points per axis");
        const double h = 2.0 * half_width / static_cast<double>(n - 1);
        return Grid2D{n, n, -half_width, -half_width, h, h};
    }

    std::size_t size() const { return nx * ny; }
    P2 point(std::size_t idx) const
    {
        return {x0 + dx * static_cast<double>(idx % nx), y0 + dy * static_cast<double>(idx / nx)};
    }
    std::vector<P2> points() const
    {
        std::vector<P2> p(size());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = point(i);
        return p;
    }
};

/// Phantom values on a grid, averaged over `super` x `super` subsamples per cell.
inline std::vector<double> rasterize(const Phantom& ph, const Grid2D& g, std::size_t super = 4)
{
    std::vector<double> v(g.size());
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
        const P2 c = g.point(idx);
        double acc = 0.0;
        for (std::size_t a = 0; a < super; ++a)
            for (std::size_t b = 0; b < super; ++b) {
                const double ox = ((static_cast<double>(a) + 0.5) / static_cast<double>(super) - 0.5) * g.dx;
                const double oy = ((static_cast<double>(b) + 0.5) / static_cast<double>(super) - 0.5) * g.dy;
                acc += ph(P2{c[0] + ox, c[1] + oy});
            }
        v[idx] = acc / static_cast<double>(super * super);
    }
    return v;
}

/// Limited-angle Radon data: values[i * n_p + k] = R f(alpha_i, p0 + k dp).
struct Sinogram {
    AngularSector sector;
    double p0 = -1.0;
    double dp = 1.0;
    std::size_t n_p = 0;
    std::vector<double> values;

    double p(std::size_t k) const { return p0 + dp * static_cast<double>(k); }
    double at(std::size_t i, std::size_t k) const { return values[i * n_p + k]; }
    /// Offsets cover [-a, a] with a = -p0.
    double support_radius() const { return -p0; }
    /// Largest |t| that slice_to_fourier accepts.
    double band_limit() const { return std::numbers::pi / dp; }
};

/// Offsets p_k = -a + k dp, k = 0..n_p-1, dp = 2a/(n_p-1).
inline Sinogram radon_transform(const Phantom& ph, const AngularSector& sector, std::size_t n_p)
{
    sector.validate();
    if (n_p < 3)
        throw ConfigError("sinogram needs at least 3 offsets");
    Sinogram s;
    s.sector = sector;
    s.p0 = -ph.support_radius();
    s.dp = 2.0 * ph.support_radius() / static_cast<double>(n_p - 1);
    s.n_p = n_p;
    s.values.resize(sector.count * n_p);
    for (std::size_t i = 0; i < sector.count; ++i)
        for (std::size_t k = 0; k < n_p; ++k)
            s.values[i * n_p + k] = ph.line_integral(sector.direction(i), s.p(k));
    return s;
}

/// int R f(alpha_i, p) e^{i p t} dp by the trapezoid rule; equals the
/// transform of f at t alpha_i.
inline cplx slice_to_fourier(const Sinogram& s, std::size_t alpha_index, double t)
{
    if (alpha_index >= s.sector.count)
        throw ConfigError("slice_to_fourier: direction index out of range");
    if (std::abs(t) > s.band_limit() * (1.0 + 1e-12))
        throw ConfigError("slice_to_fourier: |t| = " + std::to_string(std::abs(t)) + " beyond the band limit pi/dp = " +
                          std::to_string(s.band_limit()));
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < s.n_p; ++k) {
        const double w = (k == 0 || k + 1 == s.n_p) ? 0.5 * s.dp : s.dp;
        const double v = w * s.at(alpha_index, k);
        re += v * std::cos(s.p(k) * t);
        im += v * std::sin(s.p(k) * t);
    }
    return {re, im};
}

/// Spectral data on the truncated double cone of a sinogram.
struct ConeData {
    specext::SpectralWindow<2> window;
    specext::SpectralSamples<2> samples;
};

/// Computes slices on a uniform t-grid of spacing dt over [-T_grid, T_grid]
/// and interpolates them (cubic Lagrange in t, none across directions) at
/// the nodes of the truncated-cone window with the sinogram's directions.
inline ConeData fill_spectral_cone(const Sinogram& s, double T, std::size_t t_panels = 4, std::size_t order = 16,
                                   double dt = 0.0, double T_grid = 0.0)
{
    s.sector.validate();
    if (!(T > 0.0))
        throw ConfigError("fill_spectral_cone: T must be positive");
    if (T > s.band_limit())
        throw ConfigError("fill_spectral_cone: T = " + std::to_string(T) + " exceeds the sinogram band limit " +
                          std::to_string(s.band_limit()));
    if (dt <= 0.0)
        dt = T / 256.0;
    if (T_grid <= 0.0)
        T_grid = std::min(T + 2.0 * dt, s.band_limit());
    const auto half = static_cast<long long>(std::floor(T_grid / dt + 1e-9));
    const std::size_t nt = static_cast<std::size_t>(2 * half + 1);

    ConeData out{specext::SpectralWindow<2>::truncated_cone(s.sector.alpha_min, s.sector.alpha_max, s.sector.count,
                                                            T, t_panels, order),
                 {}};
    out.samples.nodes = out.window.nodes();
    out.samples.values.reserve(out.window.size());

    const std::size_t per_dir = out.window.size() / s.sector.count;
    std::vector<cplx> slice(nt);
    for (std::size_t i = 0; i < s.sector.count; ++i) {
        for (std::size_t m = 0; m < nt; ++m)
            slice[m] = slice_to_fourier(s, i, dt * static_cast<double>(static_cast<long long>(m) - half));
        const double ca = std::cos(s.sector.direction(i));
        const double sa = std::sin(s.sector.direction(i));
        for (std::size_t q = 0; q < per_dir; ++q) {
            const P2& xi = out.window.nodes()[i * per_dir + q];
            const double t = xi[0] * ca + xi[1] * sa;
            const double pos = t / dt + static_cast<double>(half);
            auto m0 = static_cast<long long>(std::floor(pos)) - 1;
            if (m0 < 0 || m0 + 3 >= static_cast<long long>(nt))
                throw ConfigError("fill_spectral_cone: node t = " + std::to_string(t) + " outside the computed slices");
            cplx v = 0.0;
            for (int a = 0; a < 4; ++a) {
                double l = 1.0;
                for (int b = 0; b < 4; ++b)
                    if (b != a)
                        l *= (pos - static_cast<double>(m0 + b)) / static_cast<double>(a - b);
                v += l * slice[static_cast<std::size_t>(m0 + a)];
            }
            out.samples.values.push_back(v);
        }
    }
    return out;
}

/// Kernel configuration for a sector: mollifier inscribed in the
/// truncated cone, a1 = 1.25 a by default.
inline specext::DeltaSeqConfig<2> cone_config(const AngularSector& sector, double T, int j, double a)
{
    const auto w = specext::SpectralWindow<2>::truncated_cone(sector.alpha_min, sector.alpha_max, sector.count, T, 1, 2);
    return specext::DeltaSeqConfig<2>(j, a, specext::inscribed_mollifier(w));
}

/// Reconstruction f_j on `eval` from the sinogram via the cone window.
inline specext::ExtrapolationResult limited_angle_reconstruct(const Sinogram& s, const specext::DeltaSeqConfig<2>& cfg,
                                                              double T, const std::vector<P2>& eval,
                                                              std::size_t t_panels = 4, std::size_t order = 16)
{
    cfg.validate();
    const ConeData cone = fill_spectral_cone(s, T, t_panels, order);
    if (!cone.window.contains_ball(cfg.mollifier.center(), cfg.mollifier.radius()))
        throw GeometryError("mollifier ball is not inside the truncated cone window");
    const specext::KernelSpectrum<2> spectrum(cfg);
    return specext::extrapolate(cone.window, cone.samples, spectrum, eval);
}

} // namespace illposed::radon

#endif // ILLPOSED_RADON_HPP
