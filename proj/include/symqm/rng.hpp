#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace symqm {

namespace detail {

// splitmix64 finalizer; used only to decorrelate (seed, stream) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Deterministic RNG with independent substreams. Identical (seed, stream)
/// yields an identical sequence on every platform: mt19937_64 is fully
/// specified by the standard and doubles are produced by an explicit 53-bit
/// conversion rather than std::uniform_real_distribution.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream),
          engine_(detail::mix64(detail::mix64(seed) ^ detail::mix64(~stream))) {}

    /// Child generator for a per-trial substream.
    SeededRng substream(std::uint64_t stream) const { return SeededRng(seed_, stream); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Modulo bias is below 2^-53 for the n used here.
    int uniform_index(int n) {
        if (n <= 0) throw std::invalid_argument("uniform_index: n must be positive");
        int k = static_cast<int>(uniform() * n);
        return k < n ? k : n - 1;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Draw an index with probability proportional to weights[i]. Zero-weight
/// indices are never drawn (their cumulative interval is empty).
inline std::size_t sample_discrete(const std::vector<double>& weights, SeededRng& rng) {
    if (weights.empty())
        throw std::invalid_argument("sample_discrete: empty weight vector");
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !(w == w))
            throw std::invalid_argument("sample_discrete: weights must be finite and nonnegative");
        total += w;
    }
    if (total <= 0.0)
        throw std::invalid_argument("sample_discrete: weights sum to zero");
    double u = rng.uniform() * total;
    double cum = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) last_positive = i;
        cum += weights[i];
        if (u < cum && weights[i] > 0.0) return i;
    }
    return last_positive; // u == total up to roundoff
}

} // namespace symqm
