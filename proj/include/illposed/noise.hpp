#ifndef ILLPOSED_NOISE_HPP
#define ILLPOSED_NOISE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "illposed/errors.hpp"
#include "illposed/stablediff.hpp"

namespace illposed {

enum class NoisePattern {
    uniform,     ///< i.i.d. uniform on [-delta, delta)
    alternating, ///< +delta, -delta, +delta, ... per sample
    square,      ///< +delta for 2k samples, then -delta for 2k samples
};

inline NoisePattern parse_noise_pattern(const std::string& s)
{
    if (s == "uniform")
        return NoisePattern::uniform;
    if (s == "alternating")
        return NoisePattern::alternating;
    if (s == "square")
        return NoisePattern::square;
    throw ConfigError("unknown noise pattern '" + s + "' (uniform|alternating|square)");
}

inline std::string to_string(NoisePattern p)
{
    switch (p) {
    case NoisePattern::uniform:
        return "uniform";
    case NoisePattern::alternating:
        return "alternating";
    case NoisePattern::square:
        return "square";
    }
    return "?";
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
/// Bit-identical on every platform, unlike std::uniform_real_distribution.
inline double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Adds noise with sup-norm at most delta and records delta on the result.
///
/// `square_half_period` (in samples) sets the block length of the square
/// pattern; with the differentiation step k it should be 2k, which makes
/// f(x+h) and f(x-h) receive opposite signs at most grid points.
inline stablediff::SampledSignal synth_noise(const stablediff::SampledSignal& signal, double delta,
                                             std::uint64_t seed, NoisePattern pattern,
                                             std::size_t square_half_period = 1)
{
    if (!(delta >= 0.0))
        throw DomainError("synth_noise: delta must be nonnegative");
    std::vector<double> v = signal.values();
    if (delta == 0.0)
        return stablediff::SampledSignal(std::move(v), signal.x0(), signal.dx(), 0.0);
    switch (pattern) {
    case NoisePattern::uniform: {
        std::mt19937_64 rng(seed);
        for (double& x : v)
            x += delta * (2.0 * unit_uniform(rng) - 1.0);
        break;
    }
    case NoisePattern::alternating:
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += (i % 2 == 0) ? delta : -delta;
        break;
    case NoisePattern::square: {
        const std::size_t half = square_half_period == 0 ? 1 : square_half_period;
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] += ((i / half) % 2 == 0) ? delta : -delta;
        break;
    }
    }
    return stablediff::SampledSignal(std::move(v), signal.x0(), signal.dx(), delta);
}

} // namespace illposed

#endif // ILLPOSED_NOISE_HPP
