// Recovers f(x) = (1 - x^2)^2 on [-1, 1] from its transform on [-1, 1]
// through the kernels delta_j, once by direct convolution and once from
// the spectral data, and prints how the data-error amplification grows.

#include <cmath>
#include <cstdio>

#include "illposed/specext.hpp"

int main()
{
    using namespace illposed::specext;
    auto f_fn = [](const Point<1>& x) { return (1.0 - x[0] * x[0]) * (1.0 - x[0] * x[0]); };
    const auto f = CompactFunction<1>::sample(f_fn, 1.0, 1001);
    const auto window = SpectralWindow<1>::interval(-1.0, 1.0);
    const auto data = sample_spectrum(f, window);
    const auto eval = linspace_points(-1.0, 1.0, 41);

    std::printf("%4s %14s %14s %17s\n", "j", "|f_j - f|", "|spec - conv|", "amplification");
    for (int j : {1, 2, 4, 8, 16}) {
        const auto cfg = default_config_1d(j);
        const auto conv = convolve(f, cfg, eval);
        const auto spec = extrapolate(window, data, KernelSpectrum<1>(cfg), eval);
        double bias = 0.0, gap = 0.0;
        for (std::size_t i = 0; i < eval.size(); ++i) {
            bias = std::max(bias, std::abs(conv[i] - f_fn(eval[i])));
            gap = std::max(gap, std::abs(conv[i] - spec.values[i]));
        }
        std::printf("%4d %14.4g %14.4g %12s10^%.1f\n", j, bias, gap, "", spec.log10_amplification);
    }
}
