#ifndef ILLPOSED_QUADRATURE_HPP
#define ILLPOSED_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace illposed {

/// Nodes and weights of a one-dimensional quadrature rule.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    template <class F>
    auto integrate(F&& f) const
    {
        decltype(f(0.0)) acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Gauss-Legendre rule with n points on [-1, 1].
///
/// Roots are found by Newton iteration on the three-term recurrence,
/// started from the Tricomi asymptotic guess; weights follow from the
/// derivative at the root. Accurate to a few ulp for n up to several
/// thousand.
inline Rule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: need at least one node");
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const std::size_t half = (n + 1) / 2;
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (dn + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double dk = static_cast<double>(k);
                const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
                p0 = p1;
                p1 = p2;
            }
            dp = dn * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16 * std::max(1.0, std::abs(x)))
                break;
        }
        // recompute derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double dk = static_cast<double>(k);
            const double p2 = ((2.0 * dk - 1.0) * x * p1 - (dk - 1.0) * p0) / dk;
            p0 = p1;
            p1 = p2;
        }
        dp = dn * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Gauss-Legendre rule with n points mapped to [lo, hi].
inline Rule gauss_legendre(std::size_t n, double lo, double hi)
{
    Rule ref = gauss_legendre(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < n; ++i) {
        ref.nodes[i] = mid + half * ref.nodes[i];
        ref.weights[i] *= half;
    }
    return ref;
}

/// Composite Gauss-Legendre rule over the panels delimited by `breaks`
/// (strictly increasing), `order` points per panel.
inline Rule composite_gauss_legendre(std::span<const double> breaks, std::size_t order)
{
    if (breaks.size() < 2)
        throw std::invalid_argument("composite_gauss_legendre: need at least two breakpoints");
    const Rule ref = gauss_legendre(order);
    Rule rule;
    rule.nodes.reserve((breaks.size() - 1) * order);
    rule.weights.reserve((breaks.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double lo = breaks[p];
        const double hi = breaks[p + 1];
        if (!(hi > lo))
            continue;
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < order; ++i) {
            rule.nodes.push_back(mid + half * ref.nodes[i]);
            rule.weights.push_back(half * ref.weights[i]);
        }
    }
    return rule;
}

/// Composite Gauss-Legendre rule with `panels` equal panels on [lo, hi].
inline Rule composite_gauss_legendre(double lo, double hi, std::size_t panels, std::size_t order)
{
    panels = std::max<std::size_t>(panels, 1);
    std::vector<double> breaks(panels + 1);
    for (std::size_t p = 0; p <= panels; ++p)
        breaks[p] = lo + (hi - lo) * static_cast<double>(p) / static_cast<double>(panels);
    breaks.back() = hi;
    return composite_gauss_legendre(breaks, order);
}

} // namespace illposed

#endif // ILLPOSED_QUADRATURE_HPP
