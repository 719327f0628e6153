#pragma once

#include <cstdint>
#include <limits>

namespace ppsm::numerics {

/// Counter-based pseudo-random stream.
///
/// Output i of stream (seed, stream_id) is a SplitMix64 finalizer applied to
/// key + (i + 1) * gamma, where key and the odd increment gamma are derived
/// from (seed, stream_id). The sequence is a pure function of
/// (seed, stream_id, draw count), so work split across threads by stream id
/// reproduces bit-for-bit regardless of scheduling.
///
/// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t draws() const { return counter_; }

    /// Independent stream sharing this seed.
    RngStream fork(std::uint64_t stream_id) const { return RngStream(seed_, stream_id); }

    result_type operator()();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t gamma_;
    std::uint64_t counter_ = 0;
};

/// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace ppsm::numerics
