#ifndef ILLPOSED_SPECEXT_HPP
#define ILLPOSED_SPECEXT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "illposed/bump.hpp"
#include "illposed/errors.hpp"
#include "illposed/quadrature.hpp"

/// Recovery of a compactly supported function from its Fourier transform
/// known on a compact window, through a delta-type kernel sequence.
///
/// Transform convention: F f(xi) = int f(x) e^{i xi.x} dx.
namespace illposed::specext {

template <std::size_t Dim>
using Point = std::array<double, Dim>;

using cplx = std::complex<double>;

template <std::size_t Dim>
inline double dot(const Point<Dim>& a, const Point<Dim>& b)
{
    double s = 0.0;
    for (std::size_t d = 0; d < Dim; ++d)
        s += a[d] * b[d];
    return s;
}

template <std::size_t Dim>
inline double norm(const Point<Dim>& a)
{
    return std::sqrt(dot<Dim>(a, a));
}

template <std::size_t Dim>
inline Point<Dim> sub(const Point<Dim>& a, const Point<Dim>& b)
{
    Point<Dim> r{};
    for (std::size_t d = 0; d < Dim; ++d)
        r[d] = a[d] - b[d];
    return r;
}

/// Area (Dim 2) or length (Dim 1) of the unit sphere: 2 or 2 pi.
template <std::size_t Dim>
constexpr double sphere_measure()
{
    static_assert(Dim == 1 || Dim == 2, "only dimensions 1 and 2 are supported");
    return Dim == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

template <std::size_t Dim>
constexpr double two_pi_pow()
{
    return Dim == 1 ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi * std::numbers::pi;
}

enum class WindowShape { interval, box, ball, truncated_cone };

inline std::string to_string(WindowShape s)
{
    switch (s) {
    case WindowShape::interval:
        return "interval";
    case WindowShape::box:
        return "box";
    case WindowShape::ball:
        return "ball";
    case WindowShape::truncated_cone:
        return "cone";
    }
    return "?";
}

/// Compact frequency window with a positive-weight quadrature rule.
template <std::size_t Dim>
class SpectralWindow {
    static_assert(Dim == 1 || Dim == 2, "only dimensions 1 and 2 are supported");

public:
    WindowShape shape() const { return shape_; }
    const std::vector<Point<Dim>>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }
    /// Shape parameters in the order used by header(): interval lo hi;
    /// box lo0 hi0 lo1 hi1; ball c.. r; cone alpha_min alpha_max n_alpha T.
    const std::vector<double>& params() const { return params_; }

    /// Exact measure of the window.
    double volume() const { return volume_; }

    /// "dim shape params..." as used in spectral sample files.
    std::string header() const
    {
        std::ostringstream os;
        os.precision(17);
        os << Dim << ' ' << to_string(shape_);
        for (double p : params_)
            os << ' ' << p;
        return os.str();
    }

    /// Whether the closed ball B(c, r) lies in the window, up to `tol`.
    bool contains_ball(const Point<Dim>& c, double r, double tol = 1e-12) const
    {
        switch (shape_) {
        case WindowShape::interval:
        case WindowShape::box:
            for (std::size_t d = 0; d < Dim; ++d)
                if (c[d] - r < params_[2 * d] - tol || c[d] + r > params_[2 * d + 1] + tol)
                    return false;
            return true;
        case WindowShape::ball: {
            Point<Dim> c0{};
            for (std::size_t d = 0; d < Dim; ++d)
                c0[d] = params_[d];
            return norm<Dim>(sub<Dim>(c, c0)) + r <= params_[Dim] + tol;
        }
        case WindowShape::truncated_cone:
            if constexpr (Dim == 2)
                return cone_contains_ball(c, r, tol);
            return false;
        }
        return false;
    }

    // ---- factories ----------------------------------------------------

    /// [lo, hi] with `panels` Gauss-Legendre panels of `order` points.
    static SpectralWindow interval(double lo, double hi, std::size_t panels = 128, std::size_t order = 24)
        requires(Dim == 1)
    {
        if (!(hi > lo))
            throw ConfigError("interval window needs lo < hi");
        SpectralWindow w;
        w.shape_ = WindowShape::interval;
        w.params_ = {lo, hi};
        w.volume_ = hi - lo;
        const Rule r = composite_gauss_legendre(lo, hi, panels, order);
        for (std::size_t i = 0; i < r.size(); ++i) {
            w.nodes_.push_back({r.nodes[i]});
            w.weights_.push_back(r.weights[i]);
        }
        return w;
    }

    /// [lo0, hi0] x [lo1, hi1], tensor-product Gauss-Legendre.
    static SpectralWindow box(const Point<2>& lo, const Point<2>& hi, std::size_t panels = 8,
                              std::size_t order = 16)
        requires(Dim == 2)
    {
        if (!(hi[0] > lo[0]) || !(hi[1] > lo[1]))
            throw ConfigError("box window needs lo < hi on both axes");
        SpectralWindow w;
        w.shape_ = WindowShape::box;
        w.params_ = {lo[0], hi[0], lo[1], hi[1]};
        w.volume_ = (hi[0] - lo[0]) * (hi[1] - lo[1]);
        const Rule r0 = composite_gauss_legendre(lo[0], hi[0], panels, order);
        const Rule r1 = composite_gauss_legendre(lo[1], hi[1], panels, order);
        for (std::size_t i = 0; i < r0.size(); ++i)
            for (std::size_t k = 0; k < r1.size(); ++k) {
                w.nodes_.push_back({r0.nodes[i], r1.nodes[k]});
                w.weights_.push_back(r0.weights[i] * r1.weights[k]);
            }
        return w;
    }

    /// Ball B(c, radius). In 2D: polar Gauss-Legendre in r times a
    /// uniform rule with `n_angles` points in angle.
    static SpectralWindow ball(const Point<Dim>& c, double radius, std::size_t panels = 8, std::size_t order = 16,
                               std::size_t n_angles = 128)
    {
        if (!(radius > 0.0))
            throw ConfigError("ball window needs a positive radius");
        SpectralWindow w;
        w.shape_ = WindowShape::ball;
        w.params_.assign(c.begin(), c.end());
        w.params_.push_back(radius);
        if constexpr (Dim == 1) {
            w.volume_ = 2.0 * radius;
            const Rule r = composite_gauss_legendre(c[0] - radius, c[0] + radius, panels, order);
            for (std::size_t i = 0; i < r.size(); ++i) {
                w.nodes_.push_back({r.nodes[i]});
                w.weights_.push_back(r.weights[i]);
            }
        } else {
            if (n_angles == 0)
                throw ConfigError("ball window needs at least one angle");
            w.volume_ = std::numbers::pi * radius * radius;
            const Rule r = composite_gauss_legendre(0.0, radius, panels, order);
            const double dth = 2.0 * std::numbers::pi / static_cast<double>(n_angles);
            for (std::size_t i = 0; i < r.size(); ++i)
                for (std::size_t k = 0; k < n_angles; ++k) {
                    const double th = dth * static_cast<double>(k);
                    w.nodes_.push_back({c[0] + r.nodes[i] * std::cos(th), c[1] + r.nodes[i] * std::sin(th)});
                    w.weights_.push_back(r.weights[i] * r.nodes[i] * dth);
                }
        }
        return w;
    }

    /// Double cone {t alpha : alpha in [alpha_min, alpha_max], |t| <= T}.
    /// Directions are the `n_alpha` midpoints of the sector; along each
    /// direction t runs over Gauss-Legendre panels on [-T, 0] and [0, T]
    /// with Jacobian |t|.
    static SpectralWindow truncated_cone(double alpha_min, double alpha_max, std::size_t n_alpha, double T,
                                         std::size_t t_panels = 4, std::size_t order = 16)
        requires(Dim == 2)
    {
        const double width = alpha_max - alpha_min;
        if (n_alpha == 0)
            throw ConfigError("cone window: empty sector (no directions)");
        if (!(width > 0.0) || width > std::numbers::pi + 1e-12)
            throw ConfigError("cone window: need 0 < alpha_max - alpha_min <= pi");
        if (!(T > 0.0))
            throw ConfigError("cone window: T must be positive");
        SpectralWindow w;
        w.shape_ = WindowShape::truncated_cone;
        w.params_ = {alpha_min, alpha_max, static_cast<double>(n_alpha), T};
        w.volume_ = width * T * T;
        const double da = width / static_cast<double>(n_alpha);
        const Rule rt = composite_gauss_legendre(0.0, T, t_panels, order);
        for (std::size_t i = 0; i < n_alpha; ++i) {
            const double al = alpha_min + (static_cast<double>(i) + 0.5) * da;
            const double ca = std::cos(al);
            const double sa = std::sin(al);
            for (int side : {-1, 1})
                for (std::size_t k = 0; k < rt.size(); ++k) {
                    const double t = side * rt.nodes[k];
                    w.nodes_.push_back({t * ca, t * sa});
                    w.weights_.push_back(rt.weights[k] * rt.nodes[k] * da);
                }
        }
        return w;
    }

private:
    bool cone_contains_ball(const Point<2>& c, double r, double tol) const
    {
        const double amin = params_[0];
        const double amax = params_[1];
        const double T = params_[3];
        if (norm<2>(c) + r > T + tol)
            return false;
        if (amax - amin >= std::numbers::pi - 1e-12)
            return true; // the double cone is the whole disc
        // one-sided convex sector containing c (or -c)
        for (double s : {1.0, -1.0}) {
            const Point<2> p{s * c[0], s * c[1]};
            double ang = std::atan2(p[1], p[0]);
            while (ang < amin)
                ang += 2.0 * std::numbers::pi;
            while (ang >= amin + 2.0 * std::numbers::pi)
                ang -= 2.0 * std::numbers::pi;
            if (ang > amax)
                continue;
            auto ray_dist = [&](double al) {
                const Point<2> e{std::cos(al), std::sin(al)};
                const double proj = dot<2>(p, e);
                if (proj <= 0.0)
                    return norm<2>(p);
                return std::abs(p[0] * e[1] - p[1] * e[0]);
            };
            return std::min(ray_dist(amin), ray_dist(amax)) >= r - tol;
        }
        return false;
    }

    WindowShape shape_ = WindowShape::interval;
    std::vector<double> params_;
    std::vector<Point<Dim>> nodes_;
    std::vector<double> weights_;
    double volume_ = 0.0;
};

/// h(xi) = norm_const * exp(-1/(1 - |xi - center|^2 / radius^2)) on the
/// ball, 0 outside, scaled so that (2 pi)^{-n} int h = 1.
template <std::size_t Dim>
class Mollifier {
public:
    Mollifier() = default;
    Mollifier(const Point<Dim>& center, double radius) : center_(center), radius_(radius)
    {
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw ConfigError("mollifier radius must be positive");
        norm_const_ = two_pi_pow<Dim>() / (profile_integral() * std::pow(radius, Dim));
    }

    const Point<Dim>& center() const { return center_; }
    double radius() const { return radius_; }
    double norm_const() const { return norm_const_; }

    double operator()(const Point<Dim>& xi) const
    {
        const Point<Dim> d = sub<Dim>(xi, center_);
        return norm_const_ * bump_profile(dot<Dim>(d, d) / (radius_ * radius_));
    }

    /// int over the unit ball of exp(-1/(1-|u|^2)) du.
    static double profile_integral()
    {
        static const double value = [] {
            const Rule r = composite_gauss_legendre(0.0, 1.0, 32, 24);
            double acc = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double u = r.nodes[i];
                const double jac = (Dim == 1) ? 2.0 : 2.0 * std::numbers::pi * u;
                acc += r.weights[i] * jac * bump_profile(u * u);
            }
            return acc;
        }();
        return value;
    }

    /// Radial part of the inverse transform: g(z) = e^{-i c.z} G(|z|) with
    /// g = (2 pi)^{-n} int h(xi) e^{-i xi.z} d xi. Integrated over the
    /// support with enough panels to resolve the oscillation.
    double radial_inverse(double rz) const
    {
        const double k = radius_ * rz;
        static const Rule ref = gauss_legendre(16);
        const auto panels = static_cast<std::size_t>(8.0 + std::ceil(k / 2.0));
        const double half = 0.5 / static_cast<double>(panels);
        double acc = 0.0;
        for (std::size_t p = 0; p < panels; ++p) {
            const double mid = (2.0 * static_cast<double>(p) + 1.0) * half;
            for (std::size_t i = 0; i < ref.size(); ++i) {
                const double u = mid + half * ref.nodes[i];
                const double b = bump_profile(u * u);
                if (b == 0.0)
                    continue;
                const double w = half * ref.weights[i];
                if constexpr (Dim == 1)
                    acc += w * b * 2.0 * std::cos(k * u);
                else
                    acc += w * b * 2.0 * std::numbers::pi * std::cyl_bessel_j(0.0, k * u) * u;
            }
        }
        return acc * norm_const_ * std::pow(radius_, Dim) / two_pi_pow<Dim>();
    }

    /// g(z) as defined for radial_inverse().
    cplx inverse_transform(const Point<Dim>& z) const
    {
        const double G = radial_inverse(norm<Dim>(z));
        const double ph = -dot<Dim>(center_, z);
        return {G * std::cos(ph), G * std::sin(ph)};
    }

private:
    Point<Dim> center_{};
    double radius_ = 1.0;
    double norm_const_ = 1.0;
};

/// Checked construction: the support ball must lie in the window.
template <std::size_t Dim>
Mollifier<Dim> make_mollifier(const SpectralWindow<Dim>& window, const Point<Dim>& center, double radius)
{
    if (!window.contains_ball(center, radius))
        throw GeometryError("mollifier ball (radius " + std::to_string(radius) + ") is not inside the " +
                            to_string(window.shape()) + " window");
    return Mollifier<Dim>(center, radius);
}

/// Largest centered mollifier for a window: the inscribed ball of an
/// interval, box or ball; for a cone, the ball on the sector bisector
/// tangent to both edges and to |xi| = T.
template <std::size_t Dim>
Mollifier<Dim> inscribed_mollifier(const SpectralWindow<Dim>& window, double shrink = 1.0)
{
    const auto& p = window.params();
    Point<Dim> c{};
    double r = 0.0;
    switch (window.shape()) {
    case WindowShape::interval:
    case WindowShape::box:
        r = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < Dim; ++d) {
            c[d] = 0.5 * (p[2 * d] + p[2 * d + 1]);
            r = std::min(r, 0.5 * (p[2 * d + 1] - p[2 * d]));
        }
        break;
    case WindowShape::ball:
        for (std::size_t d = 0; d < Dim; ++d)
            c[d] = p[d];
        r = p[Dim];
        break;
    case WindowShape::truncated_cone:
        if constexpr (Dim == 2) {
            const double half = 0.5 * (p[1] - p[0]);
            const double T = p[3];
            if (half >= 0.5 * std::numbers::pi - 1e-12) {
                r = T;
            } else {
                const double mid = 0.5 * (p[0] + p[1]);
                const double s = std::sin(half);
                const double dist = T / (1.0 + s);
                r = dist * s;
                c = {dist * std::cos(mid), dist * std::sin(mid)};
            }
        }
        break;
    }
    return make_mollifier(window, c, r * shrink);
}

/// P_j(r) = (j / (4 pi a1^2))^{n/2} (1 - r/(4 a1^2))^j, r = |x|^2.
/// Not truncated: outside r <= 4 a1^2 the polynomial is used as is.
inline double pj(double r, int j, double a1, int n)
{
    const double q = 4.0 * a1 * a1;
    return std::pow(static_cast<double>(j) / (std::numbers::pi * q), 0.5 * n) * std::pow(1.0 - r / q, j);
}

enum class SpectrumMethod { quadrature, laplacian_expansion };

inline std::string to_string(SpectrumMethod m)
{
    return m == SpectrumMethod::quadrature ? "quadrature" : "laplacian-expansion";
}

inline SpectrumMethod parse_spectrum_method(const std::string& s)
{
    if (s == "quadrature")
        return SpectrumMethod::quadrature;
    if (s == "laplacian-expansion" || s == "expansion")
        return SpectrumMethod::laplacian_expansion;
    throw ConfigError("unknown spectrum method '" + s + "' (quadrature|laplacian-expansion)");
}

/// Parameters of the kernel delta_j(x) = P_j(|x|^2) g(x).
template <std::size_t Dim>
struct DeltaSeqConfig {
    int j = 4;
    double a = 1.0;
    double a1 = 1.25;
    Mollifier<Dim> mollifier;
    double truncation_radius = 10.0;
    SpectrumMethod method = SpectrumMethod::laplacian_expansion;
    /// Allowed tail + roundoff of the quadrature spectrum, relative to
    /// the mollifier peak.
    double spectrum_tolerance = 1e-3;

    DeltaSeqConfig() = default;
    DeltaSeqConfig(int j_, double a_, Mollifier<Dim> m, std::optional<double> a1_ = std::nullopt,
                   std::optional<double> R = std::nullopt,
                   SpectrumMethod meth = SpectrumMethod::laplacian_expansion)
        : j(j_), a(a_), a1(a1_.value_or(1.25 * a_)), mollifier(m), truncation_radius(R.value_or(8.0 * a1)),
          method(meth)
    {
        validate();
    }

    void validate() const
    {
        if (j < 1)
            throw ConfigError("kernel index j must be >= 1");
        if (!(a > 0.0))
            throw ConfigError("support radius a must be positive");
        if (!(a1 > a))
            throw ConfigError("a1 must exceed a strictly");
        if (!(truncation_radius > 4.0 * a1))
            throw ConfigError("truncation radius must exceed 4*a1");
    }

    DeltaSeqConfig with_j(int jj) const
    {
        DeltaSeqConfig c = *this;
        c.j = jj;
        c.validate();
        return c;
    }
};

/// delta_j(x) = P_j(|x|^2) g(x).
template <std::size_t Dim>
cplx delta_kernel(const Point<Dim>& x, const DeltaSeqConfig<Dim>& cfg)
{
    return pj(dot<Dim>(x, x), cfg.j, cfg.a1, Dim) * cfg.mollifier.inverse_transform(x);
}

/// Fourier transform of delta_j, evaluated by one of two methods.
///
/// laplacian_expansion: F[|x|^2 g] = -Laplacian h, so F delta_j =
/// P_j(-Laplacian) h exactly; (-Laplacian)^k of the bump is a closed-form
/// BumpSeries, summed in long double. The result is supported in the
/// mollifier ball and real-valued.
///
/// quadrature: int_{|x| <= R} delta_j(x) e^{i xi.x} dx by radial
/// Gauss-Legendre, with a tail estimate from shell sampling of |delta_j|
/// on [R, 2R] and a roundoff estimate from the absolute error of g.
template <std::size_t Dim>
class KernelSpectrum {
public:
    explicit KernelSpectrum(const DeltaSeqConfig<Dim>& cfg) : cfg_(cfg)
    {
        cfg_.validate();
        const int j = cfg_.j;
        const double rho = cfg_.mollifier.radius();
        const auto powers = neg_laplacian_powers(j, Dim, rho);
        const long double q = 4.0L * cfg_.a1 * cfg_.a1;
        long double binom = 1.0L;
        for (int k = 0; k <= j; ++k) {
            BumpSeries term = powers[static_cast<std::size_t>(k)];
            term *= binom * ((k % 2 == 0) ? 1.0L : -1.0L) / std::pow(q, static_cast<long double>(k));
            series_ += term;
            binom = binom * static_cast<long double>(j - k) / static_cast<long double>(k + 1);
        }
        prefactor_ = std::pow(static_cast<long double>(j) / (std::numbers::pi_v<long double> * q), 0.5L * Dim) *
                     static_cast<long double>(cfg_.mollifier.norm_const());
    }

    const DeltaSeqConfig<Dim>& config() const { return cfg_; }

    /// Exact spectrum (laplacian expansion) in extended precision.
    long double exact(const Point<Dim>& xi) const
    {
        const Point<Dim> d = sub<Dim>(xi, cfg_.mollifier.center());
        const double rho = cfg_.mollifier.radius();
        return prefactor_ * series_(static_cast<long double>(dot<Dim>(d, d)) / (rho * rho));
    }

    /// Size of the largest term in exact(); exact() carries a relative
    /// rounding error of about epsilon(long double) times this.
    long double exact_scale(const Point<Dim>& xi) const
    {
        const Point<Dim> d = sub<Dim>(xi, cfg_.mollifier.center());
        const double rho = cfg_.mollifier.radius();
        return prefactor_ * series_.magnitude(static_cast<long double>(dot<Dim>(d, d)) / (rho * rho));
    }

    struct QuadratureValue {
        cplx value;
        double tail_estimate = 0.0;
        double roundoff_estimate = 0.0;
    };

    /// Truncated spatial quadrature; throws TruncationError when the tail
    /// plus roundoff estimate exceeds the configured tolerance.
    QuadratureValue quadrature(const Point<Dim>& xi) const
    {
        ensure_quadrature_tables();
        const Point<Dim> d = sub<Dim>(xi, cfg_.mollifier.center());
        const double k = norm<Dim>(d);
        if (k > xi_reach_)
            throw ConfigError("quadrature spectrum: |xi - center| exceeds the resolved range");
        double acc = 0.0;
        for (std::size_t i = 0; i < qx_.size(); ++i) {
            const double r = qx_[i];
            const double osc = (Dim == 1) ? 2.0 * std::cos(k * r) : 2.0 * std::numbers::pi * std::cyl_bessel_j(0.0, k * r) * r;
            acc += qw_[i] * qkernel_[i] * osc;
        }
        // g(x) = e^{-i c.x} G(|x|): the phase shifts xi to xi - c.
        QuadratureValue out;
        out.value = cplx(acc, 0.0);
        out.tail_estimate = tail_;
        out.roundoff_estimate = roundoff_;
        const double tol = cfg_.spectrum_tolerance * cfg_.mollifier.norm_const() * std::exp(-1.0);
        if (tail_ + roundoff_ > tol)
            throw TruncationError("kernel spectrum quadrature not certified at R=" +
                                      std::to_string(cfg_.truncation_radius) + " (tail " + std::to_string(tail_) +
                                      ", roundoff " + std::to_string(roundoff_) +
                                      "); increase the truncation radius or use laplacian-expansion",
                                  tail_, roundoff_);
        return out;
    }

    /// Value by the configured method.
    cplx operator()(const Point<Dim>& xi) const
    {
        if (cfg_.method == SpectrumMethod::quadrature)
            return quadrature(xi).value;
        return cplx(static_cast<double>(exact(xi)), 0.0);
    }

private:
    void ensure_quadrature_tables() const
    {
        if (!qx_.empty())
            return;
        const double R = cfg_.truncation_radius;
        const double rho = cfg_.mollifier.radius();
        xi_reach_ = 2.0 * rho;
        const auto panels = static_cast<std::size_t>(std::ceil(R * (rho + xi_reach_) / 3.0)) + 8;
        const Rule rule = composite_gauss_legendre(0.0, R, panels, 16);
        const double G0 = std::abs(cfg_.mollifier.radial_inverse(0.0));
        double abs_p = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double r = rule.nodes[i];
            const double p = pj(r * r, cfg_.j, cfg_.a1, static_cast<int>(Dim));
            qx_.push_back(r);
            qw_.push_back(rule.weights[i]);
            qkernel_.push_back(p * cfg_.mollifier.radial_inverse(r));
            abs_p += rule.weights[i] * std::abs(p) * std::pow(r, static_cast<double>(Dim) - 1.0) * sphere_measure<Dim>();
        }
        // g is a cancelling oscillatory integral: absolute error ~ eps * G(0) per value
        const double g_noise = 16.0 * std::numeric_limits<double>::epsilon() * G0;
        roundoff_ = g_noise * abs_p;
        // shell sampling of |delta_j| on [R, 2R]; values of g below its
        // noise floor are already accounted for by the roundoff term
        const std::size_t m = 400;
        const double dr = R / static_cast<double>(m);
        double tail = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = R + (static_cast<double>(i) + 0.5) * dr;
            const double g = std::max(0.0, std::abs(cfg_.mollifier.radial_inverse(r)) - g_noise);
            tail += dr * std::abs(pj(r * r, cfg_.j, cfg_.a1, static_cast<int>(Dim))) * g * std::pow(r, static_cast<double>(Dim) - 1.0) * sphere_measure<Dim>();
        }
        tail_ = tail;
    }

    DeltaSeqConfig<Dim> cfg_;
    BumpSeries series_;
    long double prefactor_ = 1.0L;

    mutable std::vector<double> qx_, qw_, qkernel_;
    mutable double tail_ = 0.0;
    mutable double roundoff_ = 0.0;
    mutable double xi_reach_ = 0.0;
};

template <std::size_t Dim>
cplx delta_kernel_spectrum(const Point<Dim>& xi, const DeltaSeqConfig<Dim>& cfg)
{
    return KernelSpectrum<Dim>(cfg)(xi);
}

/// Samples of f on the uniform grid [-a, a]^n with n_side points per
/// axis (endpoints included); zero at and beyond |x| = a.
template <std::size_t Dim>
class CompactFunction {
public:
    CompactFunction() = default;

    template <class F>
    static CompactFunction sample(F&& f, double a, std::size_t n_side)
    {
        if (!(a > 0.0))
            throw ConfigError("support radius must be positive");
        if (n_side < 3)
            throw ConfigError("need at least 3 grid points per axis");
        CompactFunction cf;
        cf.a_ = a;
        cf.n_ = n_side;
        cf.h_ = 2.0 * a / static_cast<double>(n_side - 1);
        std::size_t total = 1;
        for (std::size_t d = 0; d < Dim; ++d)
            total *= n_side;
        cf.values_.resize(total);
        for (std::size_t idx = 0; idx < total; ++idx) {
            const Point<Dim> x = cf.point(idx);
            cf.values_[idx] = (norm<Dim>(x) >= a) ? 0.0 : static_cast<double>(f(x));
        }
        return cf;
    }

    double support_radius() const { return a_; }
    std::size_t side() const { return n_; }
    double spacing() const { return h_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

    Point<Dim> point(std::size_t idx) const
    {
        Point<Dim> x{};
        for (std::size_t d = 0; d < Dim; ++d) {
            x[d] = -a_ + h_ * static_cast<double>(idx % n_);
            idx /= n_;
        }
        return x;
    }

    /// Trapezoid weight of grid point idx.
    double weight(std::size_t idx) const
    {
        double w = 1.0;
        for (std::size_t d = 0; d < Dim; ++d) {
            const std::size_t i = idx % n_;
            w *= (i == 0 || i + 1 == n_) ? 0.5 * h_ : h_;
            idx /= n_;
        }
        return w;
    }

private:
    double a_ = 1.0;
    std::size_t n_ = 0;
    double h_ = 1.0;
    std::vector<double> values_;
};

/// int f(x) e^{i xi.x} dx by the trapezoid rule on f's grid.
template <std::size_t Dim>
cplx forward_transform(const CompactFunction<Dim>& f, const Point<Dim>& xi)
{
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = f.values()[i];
        if (v == 0.0)
            continue;
        const double w = f.weight(i) * v;
        const double ph = dot<Dim>(xi, f.point(i));
        re += w * std::cos(ph);
        im += w * std::sin(ph);
    }
    return {re, im};
}

/// Transform values at given frequency nodes.
template <std::size_t Dim>
struct SpectralSamples {
    std::vector<Point<Dim>> nodes;
    std::vector<cplx> values;
};

template <std::size_t Dim>
SpectralSamples<Dim> sample_spectrum(const CompactFunction<Dim>& f, const SpectralWindow<Dim>& window)
{
    SpectralSamples<Dim> s;
    s.nodes = window.nodes();
    s.values.reserve(window.size());
    for (const auto& xi : window.nodes())
        s.values.push_back(forward_transform(f, xi));
    return s;
}

/// Left side of the inversion identity: f_j(x) = int f(y) delta_j(x - y) dy.
template <std::size_t Dim>
std::vector<cplx> convolve(const CompactFunction<Dim>& f, const DeltaSeqConfig<Dim>& cfg,
                           const std::vector<Point<Dim>>& eval)
{
    cfg.validate();
    std::vector<cplx> out(eval.size());
    for (std::size_t e = 0; e < eval.size(); ++e) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double v = f.values()[i];
            if (v == 0.0)
                continue;
            acc += f.weight(i) * v * delta_kernel(sub<Dim>(eval[e], f.point(i)), cfg);
        }
        out[e] = acc;
    }
    return out;
}

struct ExtrapolationResult {
    std::vector<cplx> values;
    /// (2 pi)^{-n} int_window |F delta_j|: gain from data errors to output.
    double amplification = 0.0;
    /// log10 of the amplification, finite even when the double overflows.
    double log10_amplification = 0.0;
    /// sup |delta_j| >= delta_j(0) = P_j(0); the amplification can never be smaller.
    double amplification_lower_bound = 0.0;
    /// Output error caused by double-precision data alone: eps * max|data| * amplification.
    double roundoff_floor = 0.0;
    double max_imag = 0.0;
    /// max|data| * volume / (2 pi)^n: size of a plain inverse transform of the data.
    double data_scale = 0.0;

    bool finite() const
    {
        return std::all_of(values.begin(), values.end(),
                           [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
    }

    /// Whether rounding of the data alone leaves at least three digits
    /// relative to data_scale.
    bool feasible() const { return finite() && roundoff_floor <= 1e-3 * data_scale; }
};

/// Right side of the inversion identity:
/// f_j(x) = (2 pi)^{-n} int_window F f(xi) F delta_j(xi) e^{-i xi.x} d xi.
///
/// The samples must sit exactly on the window nodes. Accumulation is in
/// long double; the result reports the amplification of data errors,
/// which grows super-exponentially in j.
template <std::size_t Dim>
ExtrapolationResult extrapolate(const SpectralWindow<Dim>& window, const SpectralSamples<Dim>& samples,
                                const KernelSpectrum<Dim>& spectrum, const std::vector<Point<Dim>>& eval)
{
    if (samples.nodes.size() != window.size() || samples.values.size() != window.size())
        throw ConfigError("spectral samples: expected " + std::to_string(window.size()) + " nodes, got " +
                          std::to_string(samples.nodes.size()));
    for (std::size_t i = 0; i < window.size(); ++i) {
        const double scale = std::max(1.0, norm<Dim>(window.nodes()[i]));
        if (norm<Dim>(sub<Dim>(samples.nodes[i], window.nodes()[i])) > 1e-12 * scale)
            throw ConfigError("spectral sample " + std::to_string(i) + " is not at the window quadrature node");
    }
    using ld = long double;
    using lcplx = std::complex<ld>;
    const bool exact = spectrum.config().method == SpectrumMethod::laplacian_expansion;
    std::vector<lcplx> weighted(window.size());
    ld amp = 0.0L;
    double max_data = 0.0;
    for (std::size_t i = 0; i < window.size(); ++i) {
        const lcplx dt = exact ? lcplx(spectrum.exact(window.nodes()[i]), 0.0L)
                               : lcplx(spectrum(window.nodes()[i]));
        const ld w = window.weights()[i];
        weighted[i] = w * dt * lcplx(samples.values[i]);
        amp += w * std::abs(dt);
        max_data = std::max(max_data, std::abs(samples.values[i]));
    }
    const ld inv = 1.0L / static_cast<ld>(two_pi_pow<Dim>());
    ExtrapolationResult res;
    res.values.resize(eval.size());
    for (std::size_t e = 0; e < eval.size(); ++e) {
        lcplx acc = 0.0L;
        for (std::size_t i = 0; i < window.size(); ++i) {
            // the phase is only known to double precision; its cos/sin need no more
            const double ph = -dot<Dim>(window.nodes()[i], eval[e]);
            acc += weighted[i] * lcplx(std::cos(ph), std::sin(ph));
        }
        acc *= inv;
        res.values[e] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
        res.max_imag = std::max(res.max_imag, std::abs(res.values[e].imag()));
    }
    res.amplification = static_cast<double>(amp * inv);
    res.log10_amplification = static_cast<double>(std::log10(amp * inv));
    res.amplification_lower_bound = pj(0.0, spectrum.config().j, spectrum.config().a1, Dim);
    res.roundoff_floor = std::numeric_limits<double>::epsilon() * max_data * res.amplification;
    res.data_scale = max_data * window.volume() / two_pi_pow<Dim>();
    return res;
}

/// Report of delta_sequence_check().
template <std::size_t Dim>
struct DeltaCheckReport {
    struct Region {
        Point<Dim> lo{};
        Point<Dim> hi{};
        bool contains_origin = false;
    };
    std::vector<int> j_ladder;
    std::vector<Region> regions;
    /// integrals[jj][r] = int_{regions[r]} delta_{j_ladder[jj]}
    std::vector<std::vector<cplx>> integrals;
    double uniform_bound = 0.0;
    /// Largest |integral - limit| at the last j, limit 1 or 0.
    double final_deviation = 0.0;
};

/// Integrates delta_j over each box for each j of the ladder.
template <std::size_t Dim>
DeltaCheckReport<Dim> delta_sequence_check(const DeltaSeqConfig<Dim>& cfg, const std::vector<int>& j_ladder,
                                           const std::vector<typename DeltaCheckReport<Dim>::Region>& regions,
                                           std::size_t panels = 16, std::size_t order = 16)
{
    DeltaCheckReport<Dim> rep;
    rep.j_ladder = j_ladder;
    rep.regions = regions;
    for (auto& r : rep.regions) {
        r.contains_origin = true;
        for (std::size_t d = 0; d < Dim; ++d)
            if (!(r.lo[d] < 0.0 && 0.0 < r.hi[d]))
                r.contains_origin = false;
    }
    for (int j : j_ladder) {
        const DeltaSeqConfig<Dim> c = cfg.with_j(j);
        std::vector<cplx> row;
        for (const auto& reg : rep.regions) {
            std::array<Rule, Dim> rules;
            for (std::size_t d = 0; d < Dim; ++d)
                rules[d] = composite_gauss_legendre(reg.lo[d], reg.hi[d], panels, order);
            cplx acc = 0.0;
            if constexpr (Dim == 1) {
                for (std::size_t i = 0; i < rules[0].size(); ++i)
                    acc += rules[0].weights[i] * delta_kernel<1>({rules[0].nodes[i]}, c);
            } else {
                for (std::size_t i = 0; i < rules[0].size(); ++i)
                    for (std::size_t k = 0; k < rules[1].size(); ++k)
                        acc += rules[0].weights[i] * rules[1].weights[k] *
                               delta_kernel<2>({rules[0].nodes[i], rules[1].nodes[k]}, c);
            }
            rep.uniform_bound = std::max(rep.uniform_bound, std::abs(acc));
            row.push_back(acc);
        }
        rep.integrals.push_back(std::move(row));
    }
    if (!rep.integrals.empty()) {
        const auto& last = rep.integrals.back();
        for (std::size_t r = 0; r < last.size(); ++r) {
            const double limit = rep.regions[r].contains_origin ? 1.0 : 0.0;
            rep.final_deviation = std::max(rep.final_deviation, std::abs(last[r] - limit));
        }
    }
    return rep;
}

/// Uniform 1D evaluation points lo, ..., hi.
inline std::vector<Point<1>> linspace_points(double lo, double hi, std::size_t n)
{
    std::vector<Point<1>> pts(n);
    for (std::size_t i = 0; i < n; ++i)
        pts[i] = {n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1)};
    return pts;
}

/// Default 1D fixture: window [-1, 1], centered unit-radius mollifier,
/// a = 1, a1 = 1.25, exact spectrum.
inline DeltaSeqConfig<1> default_config_1d(int j = 4)
{
    const auto window = SpectralWindow<1>::interval(-1.0, 1.0);
    return DeltaSeqConfig<1>(j, 1.0, make_mollifier<1>(window, {0.0}, 1.0));
}

} // namespace illposed::specext

#endif // ILLPOSED_SPECEXT_HPP
