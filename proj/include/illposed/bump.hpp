#ifndef ILLPOSED_BUMP_HPP
#define ILLPOSED_BUMP_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace illposed {

/// exp(-1/(1-s)) for 0 <= s < 1, zero for s >= 1. Used as phi(|x|^2/r^2).
inline double bump_profile(double s)
{
    if (!(s < 1.0))
        return 0.0;
    return std::exp(-1.0 / (1.0 - s));
}

/// A function of s in [0, 1) of the form exp(-u) * sum_k c_k u^k with
/// u = 1/(1-s), i.e. phi(s) times a Laurent polynomial in u. Every
/// derivative of phi has this form, so radial Laplacians of the bump are
/// closed under it. Coefficients are long double: they grow roughly
/// factorially with the derivative order.
class BumpSeries {
public:
    BumpSeries() = default;
    explicit BumpSeries(long double constant) : lo_(0), c_{constant} {}

    int lowest_power() const { return lo_; }
    int highest_power() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    long double coefficient(int k) const
    {
        const int i = k - lo_;
        return (i < 0 || i >= static_cast<int>(c_.size())) ? 0.0L : c_[static_cast<std::size_t>(i)];
    }

    /// d/ds [e^{-u} R(u)] = e^{-u} u^2 (R'(u) - R(u)).
    BumpSeries derivative() const
    {
        BumpSeries out;
        out.lo_ = lo_ + 1;
        out.c_.assign(c_.size() + 1, 0.0L);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const int k = lo_ + static_cast<int>(i);
            // -c_k u^{k+2}
            out.add(k + 2, -c_[i]);
            // k c_k u^{k+1}
            if (k != 0)
                out.add(k + 1, static_cast<long double>(k) * c_[i]);
        }
        out.trim();
        return out;
    }

    /// Multiplication by s = 1 - 1/u.
    BumpSeries times_s() const
    {
        BumpSeries out;
        out.lo_ = lo_ - 1;
        out.c_.assign(c_.size() + 1, 0.0L);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const int k = lo_ + static_cast<int>(i);
            out.add(k, c_[i]);
            out.add(k - 1, -c_[i]);
        }
        out.trim();
        return out;
    }

    BumpSeries& operator+=(const BumpSeries& o)
    {
        if (o.c_.empty())
            return *this;
        if (c_.empty()) {
            *this = o;
            return *this;
        }
        const int lo = std::min(lo_, o.lo_);
        const int hi = std::max(highest_power(), o.highest_power());
        std::vector<long double> c(static_cast<std::size_t>(hi - lo + 1), 0.0L);
        for (int k = lo; k <= hi; ++k)
            c[static_cast<std::size_t>(k - lo)] = coefficient(k) + o.coefficient(k);
        lo_ = lo;
        c_ = std::move(c);
        trim();
        return *this;
    }

    BumpSeries& operator*=(long double a)
    {
        for (auto& x : c_)
            x *= a;
        return *this;
    }

    /// exp(-u) sum c_k u^k at s; terms are formed in log space so that
    /// huge powers of u never meet the vanishing exponential separately.
    long double operator()(long double s) const
    {
        if (!(s < 1.0L) || c_.empty())
            return 0.0L;
        const long double u = 1.0L / (1.0L - s);
        const long double lu = std::log(u);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0.0L)
                continue;
            const int k = lo_ + static_cast<int>(i);
            const long double mag = std::log(std::fabs(c_[i])) + static_cast<long double>(k) * lu - u;
            const long double t = std::exp(mag);
            acc += (c_[i] < 0.0L) ? -t : t;
        }
        return acc;
    }

    /// Sum of |terms| at s: scale against which cancellation in operator() is judged.
    long double magnitude(long double s) const
    {
        if (!(s < 1.0L) || c_.empty())
            return 0.0L;
        const long double u = 1.0L / (1.0L - s);
        const long double lu = std::log(u);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0.0L)
                continue;
            const int k = lo_ + static_cast<int>(i);
            acc += std::exp(std::log(std::fabs(c_[i])) + static_cast<long double>(k) * lu - u);
        }
        return acc;
    }

private:
    void add(int k, long double v)
    {
        const int i = k - lo_;
        c_[static_cast<std::size_t>(i)] += v;
    }
    void trim()
    {
        std::size_t first = 0;
        while (first < c_.size() && c_[first] == 0.0L)
            ++first;
        if (first == c_.size()) {
            c_.clear();
            lo_ = 0;
            return;
        }
        std::size_t last = c_.size();
        while (c_[last - 1] == 0.0L)
            --last;
        c_ = std::vector<long double>(c_.begin() + static_cast<std::ptrdiff_t>(first),
                                      c_.begin() + static_cast<std::ptrdiff_t>(last));
        lo_ += static_cast<int>(first);
    }

    int lo_ = 0;
    std::vector<long double> c_;
};

/// (-Laplacian)^k of the radial bump phi(|eta|^2 / radius^2) in `dim`
/// dimensions, k = 0..kmax, each as a function of s = |eta|^2 / radius^2.
///
/// For F(s(eta)): Laplacian F = (4/radius^2) (s F'' + (dim/2) F').
inline std::vector<BumpSeries> neg_laplacian_powers(int kmax, int dim, double radius)
{
    std::vector<BumpSeries> out;
    out.reserve(static_cast<std::size_t>(kmax) + 1);
    out.emplace_back(1.0L);
    const long double scale = -4.0L / (static_cast<long double>(radius) * radius);
    for (int k = 1; k <= kmax; ++k) {
        const BumpSeries& f = out.back();
        const BumpSeries d1 = f.derivative();
        BumpSeries next = d1.derivative().times_s();
        BumpSeries half_dim = d1;
        half_dim *= static_cast<long double>(dim) / 2.0L;
        next += half_dim;
        next *= scale;
        out.push_back(std::move(next));
    }
    return out;
}

} // namespace illposed

#endif // ILLPOSED_BUMP_HPP
