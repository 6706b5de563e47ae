// Differentiates noisy samples of sin on one period and compares the
// observed error with the guaranteed bound, for the three noise patterns.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "illposed/noise.hpp"
#include "illposed/stablediff.hpp"

int main()
{
    using namespace illposed;
    const auto clean = stablediff::SampledSignal::from_function([](double x) { return std::sin(x); }, 0.0,
                                                                2.0 * std::numbers::pi, 4096);
    const stablediff::SmoothnessClass cls(2.0, 1.0); // |sin''| <= 1
    for (double delta : {1e-2, 1e-4, 1e-6}) {
        const auto probe = stablediff::differentiate(clean.with_delta(delta), cls);
        std::printf("delta=%.0e  h=%.4g  bound=%.4g\n", delta, probe.h_used, probe.bound);
        for (auto pattern : {NoisePattern::uniform, NoisePattern::alternating, NoisePattern::square}) {
            const auto noisy = synth_noise(clean, delta, 1, pattern, 2 * static_cast<std::size_t>(probe.step_samples));
            const auto rep = stablediff::differentiate(noisy, cls);
            double err = 0.0;
            for (std::size_t i = 0; i < noisy.size(); ++i)
                err = std::max(err, std::abs(rep.derivative[i] - std::cos(noisy.abscissa(i))));
            std::printf("  %-11s max error %.4g  (%.0f%% of bound)\n", to_string(pattern).c_str(), err,
                        100.0 * err / rep.bound);
        }
    }
}
