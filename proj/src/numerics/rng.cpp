#include "ppsm/numerics/rng.hpp"

#include <bit>

namespace ppsm::numerics {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Increment derivation from Java's SplittableRandom: force odd, and avoid
// gammas with too few bit transitions.
std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDULL;
    z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ULL;
    z = (z ^ (z >> 33)) | 1ULL;
    const int transitions = std::popcount(z ^ (z >> 1));
    return transitions < 24 ? z ^ 0xAAAAAAAAAAAAAAAAULL : z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(mix64(seed ^ mix64(stream_id + kGolden))),
      gamma_(mix_gamma(stream_id * kGolden + seed)) {}

RngStream::result_type RngStream::operator()() {
    ++counter_;
    return mix64(key_ + counter_ * gamma_);
}

double RngStream::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

}  // namespace ppsm::numerics
