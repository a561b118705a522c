#pragma once

// Counter-based random number generation.
//
// All quenched randomness in this library comes from Philox4x32-10 streams.
// A stream is addressed by (key = 64-bit master seed, stream id = 64-bit label
// hash); the 128-bit Philox counter is (stream id : block index). Components
// of a realization each own a stream named after the component ("w.forget.recurrent",
// "b.candidate", ...), so sampling one component can never perturb another and
// replicas can be generated in parallel without shared state.
//
// Gaussians use Box-Muller on 53-bit uniforms: one Philox block yields two
// uniforms, which yield one Gaussian pair. The method is fixed so that a given
// (seed, label) pair produces the same values in every build of this library.

#include <array>
#include <cstdint>
#include <string_view>

namespace eoc {

/// FNV-1a 64-bit hash, used to turn component labels into stream ids.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

/// SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Derives the seed for replica `index` of an experiment with master seed `seed`.
/// Documented so that replica decompositions are reproducible across tools.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index * 0x9e3779b97f4a7c15ull + 1));
}

/// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
/// Verified against the Random123 known-answer vectors in the test suite.
class Philox4x32 {
  public:
    Philox4x32(std::uint64_t key, std::uint64_t stream_id)
        : key0_(static_cast<std::uint32_t>(key)),
          key1_(static_cast<std::uint32_t>(key >> 32)),
          stream_(stream_id) {}

    Philox4x32(std::uint64_t key, std::string_view label) : Philox4x32(key, fnv1a64(label)) {}

    /// Raw block function: 128-bit counter, 64-bit key -> four 32-bit words.
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& ctr,
                                              std::uint32_t key0, std::uint32_t key1);

    std::uint64_t next_u64() {
        if (pos_ >= 2) refill();
        return out64_[pos_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1] (usable as a log argument).
    double next_unit_pos() { return 1.0 - next_unit(); }

  private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint64_t stream_;
    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> out64_{};
    int pos_ = 2;
};

/// N(0, 1) stream over a Philox substream, Box-Muller pair at a time.
class GaussianStream {
  public:
    GaussianStream(std::uint64_t seed, std::string_view label) : prng_(seed, label) {}
    GaussianStream(std::uint64_t seed, std::uint64_t stream_id) : prng_(seed, stream_id) {}

    double next();

  private:
    Philox4x32 prng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace eoc
