#ifndef ILLPOSED_STABLEDIFF_HPP
#define ILLPOSED_STABLEDIFF_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "illposed/errors.hpp"

/// Stable differentiation of noisy periodic data by central differences
/// whose step is the regularization parameter.
namespace illposed::stablediff {

/// Smoothness class of the unknown function: j = 1 + a is the Hölder
/// order of f' (j in (1, 2]) and mj the corresponding norm bound.
struct SmoothnessClass {
    double j = 2.0;
    double mj = 1.0;

    SmoothnessClass() = default;
    SmoothnessClass(double j_, double mj_) : j(j_), mj(mj_) { validate(); }

    void validate() const
    {
        if (!(j > 1.0))
            throw DomainError("smoothness order j=" + std::to_string(j) +
                              ": for j <= 1 no operator has a worst-case error that vanishes with delta");
        if (j > 2.0)
            throw DomainError("smoothness order j=" + std::to_string(j) + " > 2 is not supported");
        if (!(mj > 0.0) || !std::isfinite(mj))
            throw DomainError("norm bound mj must be finite and positive");
    }

    bool is_second_order() const { return j == 2.0; }
};

/// Uniform samples of one period of a T-periodic function, known up to
/// a sup-norm error `delta`. Evaluation wraps indices; no interpolation.
class SampledSignal {
public:
    SampledSignal() = default;

    SampledSignal(std::vector<double> values, double x0, double dx, double delta = 0.0)
        : values_(std::move(values)), x0_(x0), dx_(dx), delta_(delta)
    {
        if (values_.empty())
            throw ConfigError("SampledSignal: no samples");
        if (!(dx_ > 0.0) || !std::isfinite(dx_))
            throw ConfigError("SampledSignal: dx must be positive");
        if (!(delta_ >= 0.0))
            throw ConfigError("SampledSignal: delta must be nonnegative");
    }

    /// Samples f on x0 + k*dx, k = 0..n-1 with dx = period/n.
    template <class F>
    static SampledSignal from_function(F&& f, double x0, double period, std::size_t n, double delta = 0.0)
    {
        if (n == 0)
            throw ConfigError("SampledSignal: no samples");
        const double dx = period / static_cast<double>(n);
        std::vector<double> v(n);
        for (std::size_t k = 0; k < n; ++k)
            v[k] = f(x0 + static_cast<double>(k) * dx);
        return SampledSignal(std::move(v), x0, dx, delta);
    }

    std::size_t size() const { return values_.size(); }
    double x0() const { return x0_; }
    double dx() const { return dx_; }
    double delta() const { return delta_; }
    double period() const { return static_cast<double>(values_.size()) * dx_; }
    const std::vector<double>& values() const { return values_; }
    double abscissa(std::size_t k) const { return x0_ + static_cast<double>(k) * dx_; }

    SampledSignal with_delta(double delta) const { return SampledSignal(values_, x0_, dx_, delta); }

    double at_index(long long k) const
    {
        const auto n = static_cast<long long>(values_.size());
        long long r = k % n;
        if (r < 0)
            r += n;
        return values_[static_cast<std::size_t>(r)];
    }

    /// Grid index of x (any period); throws if x is not a grid point.
    long long index_of(double x) const
    {
        const double q = (x - x0_) / dx_;
        const double r = std::round(q);
        if (std::abs(q - r) > 1e-8 * std::max(1.0, std::abs(q)))
            throw ConfigError("x=" + std::to_string(x) + " is not on the sample grid");
        return static_cast<long long>(r);
    }

    double operator()(double x) const { return at_index(index_of(x)); }

private:
    std::vector<double> values_;
    double x0_ = 0.0;
    double dx_ = 1.0;
    double delta_ = 0.0;
};

/// Result of differentiate().
struct DiffReport {
    std::vector<double> derivative; ///< estimate of f' at every grid point
    double h_used = 0.0;            ///< step actually applied, a multiple of dx
    double h_ideal = 0.0;           ///< unconstrained optimal step
    long long step_samples = 0;     ///< h_used / dx
    double bound = 0.0;             ///< guaranteed sup-norm error with h_used
    double snapping_slack = 0.0;    ///< bound - bound at h_ideal (>= 0)
};

/// Worst-case error of the central difference with step h:
/// delta/h + mj*h^(j-1), or delta/h + m2*h/2 for j = 2 (Taylor bound).
inline double step_bound(double delta, const SmoothnessClass& cls, double h)
{
    if (!(h > 0.0))
        throw DomainError("step must be positive");
    if (cls.is_second_order())
        return delta / h + 0.5 * cls.mj * h;
    return delta / h + cls.mj * std::pow(h, cls.j - 1.0);
}

/// Step minimizing step_bound: sqrt(2 delta/m2) for j = 2, otherwise
/// (delta / (mj (j-1)))^(1/j).
inline double optimal_step(double delta, const SmoothnessClass& cls)
{
    cls.validate();
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("noise level delta must be positive");
    if (cls.is_second_order())
        return std::sqrt(2.0 * delta / cls.mj);
    return std::pow(delta / (cls.mj * (cls.j - 1.0)), 1.0 / cls.j);
}

/// Minimal guaranteed error: sqrt(2 m2 delta) for j = 2, otherwise
/// c_j delta^((j-1)/j) with c_j = j mj^(1/j) / (j-1)^((j-1)/j).
inline double error_bound(double delta, const SmoothnessClass& cls)
{
    cls.validate();
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw DomainError("noise level delta must be positive");
    if (cls.is_second_order())
        return std::sqrt(2.0 * cls.mj * delta);
    const double j = cls.j;
    const double cj = j * std::pow(cls.mj, 1.0 / j) / std::pow(j - 1.0, (j - 1.0) / j);
    return cj * std::pow(delta, (j - 1.0) / j);
}

namespace detail {
inline long long step_in_samples(const SampledSignal& s, double h)
{
    if (!(h > 0.0))
        throw ConfigError("step h must be positive");
    const double q = h / s.dx();
    const double k = std::round(q);
    if (k < 1.0 || std::abs(q - k) > 1e-9 * std::max(1.0, q))
        throw ConfigError("step h=" + std::to_string(h) + " is not a positive multiple of dx=" +
                          std::to_string(s.dx()) + "; interpolating between samples would void the error bound");
    return static_cast<long long>(k);
}
} // namespace detail

/// (f(x+h) - f(x-h)) / (2h) on the periodic grid.
inline double central_difference(const SampledSignal& signal, double x, double h)
{
    const long long k = detail::step_in_samples(signal, h);
    const long long i = signal.index_of(x);
    return (signal.at_index(i + k) - signal.at_index(i - k)) / (2.0 * h);
}

/// Differentiates with the optimal step snapped to the grid and reports
/// the guaranteed error for the step actually used.
inline DiffReport differentiate(const SampledSignal& signal, const SmoothnessClass& cls)
{
    if (!(signal.delta() > 0.0))
        throw DomainError("differentiate: signal.delta must be positive");
    DiffReport rep;
    rep.h_ideal = optimal_step(signal.delta(), cls);
    const double ratio = rep.h_ideal / signal.dx();
    const long long k = std::max<long long>(1, std::llround(ratio));
    const double h = static_cast<double>(k) * signal.dx();
    if (h > 2.0 * rep.h_ideal || h < 0.5 * rep.h_ideal) {
        throw ConfigError("grid too coarse: dx=" + std::to_string(signal.dx()) + " but the optimal step is " +
                          std::to_string(rep.h_ideal) + "; need dx <= " + std::to_string(2.0 * rep.h_ideal));
    }
    if (2 * k >= static_cast<long long>(signal.size()))
        throw ConfigError("optimal step exceeds half the period");
    rep.h_used = h;
    rep.step_samples = k;
    rep.bound = step_bound(signal.delta(), cls, h);
    rep.snapping_slack = std::max(0.0, rep.bound - step_bound(signal.delta(), cls, rep.h_ideal));

    const auto n = static_cast<long long>(signal.size());
    rep.derivative.resize(signal.size());
    for (long long i = 0; i < n; ++i)
        rep.derivative[static_cast<std::size_t>(i)] = (signal.at_index(i + k) - signal.at_index(i - k)) / (2.0 * h);
    return rep;
}

/// The pair f1, f2 = -f1 that no estimator can tell apart from zero data.
///
/// On [0, 2h] f1(x) = -m x (x - 2h) / 2, an arch of height m h^2/2 = delta.
/// Outside, f1 is continued by odd reflection about x = 0 and then with
/// period 4h: f1(x) = -f1(-x), f1(x + 4h) = f1(x). The continuation is C^1,
/// |f1''| = m everywhere, and the sup-norms of f1, f1', f1'' over R equal
/// those over [0, 2h]. It is one admissible choice among many.
struct AdversarialPair {
    double m = 1.0;
    double delta = 1.0;
    double h = 1.0;

    /// f1 at x (the arch and its continuation).
    double f1(double x) const
    {
        const double period = 4.0 * h;
        double y = std::fmod(x, period);
        if (y < 0.0)
            y += period;
        if (y <= 2.0 * h)
            return -m * y * (y - 2.0 * h) / 2.0;
        const double z = y - 4.0 * h; // in (-2h, 0)
        return m * z * (z + 2.0 * h) / 2.0;
    }
    double f2(double x) const { return -f1(x); }

    double df1(double x) const
    {
        const double period = 4.0 * h;
        double y = std::fmod(x, period);
        if (y < 0.0)
            y += period;
        if (y <= 2.0 * h)
            return -m * (y - h);
        const double z = y - 4.0 * h;
        return m * (z + h);
    }
    double df2(double x) const { return -df1(x); }

    double d2f1(double x) const
    {
        const double period = 4.0 * h;
        double y = std::fmod(x, period);
        if (y < 0.0)
            y += period;
        return (y <= 2.0 * h) ? -m : m;
    }
};

inline AdversarialPair adversarial_pair(double m, double delta)
{
    if (!(m > 0.0) || !(delta > 0.0))
        throw DomainError("adversarial_pair: m and delta must be positive");
    return AdversarialPair{m, delta, std::sqrt(2.0 * delta / m)};
}

/// Worst error over the adversarial pair of an estimator answering b at
/// x = 0 from the zero data: max(|b - m h|, |b + m h|), h = sqrt(2 delta/m).
/// Never below m h = sqrt(2 delta m).
inline double lower_bound_check(double estimate_at_zero, double m, double delta)
{
    const double mh = m * std::sqrt(2.0 * delta / m);
    return std::max(std::abs(estimate_at_zero - mh), std::abs(estimate_at_zero + mh));
}

} // namespace illposed::stablediff

#endif // ILLPOSED_STABLEDIFF_HPP
