#include "bkr/rng.hpp"

#include <cmath>

#include "bkr/error.hpp"

namespace bkr {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += kGolden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + kGolden + (a << 6) + (a >> 2));
    return splitmix64(s);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t s = mix(seed, stream);
    state_[0] = splitmix64(s);
    state_[1] = splitmix64(s);
    state_[2] = splitmix64(s);
    state_[3] = splitmix64(s);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_open_double() {
    // (k + 0.5) * 2^-53 lies strictly inside (0, 1).
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_exponential() {
    return -std::log1p(-next_double());
}

double RngStream::next_gaussian() {
    if (has_spare_gaussian_) {
        has_spare_gaussian_ = false;
        return spare_gaussian_;
    }
    const double u1 = 1.0 - next_double();  // (0, 1]
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_gaussian_ = r * std::sin(theta);
    has_spare_gaussian_ = true;
    return r * std::cos(theta);
}

std::uint64_t RngStream::next_below(std::uint64_t bound) {
    if (bound == 0) throw config_error("RngStream::next_below: bound must be positive");
    // Rejection below 2^64 mod bound keeps the draw unbiased.
    const std::uint64_t threshold = (0ULL - bound) % bound;
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r < threshold);
    return r % bound;
}

RngStream RngStream::child(std::uint64_t tag, std::uint64_t index) const {
    return RngStream(seed_, mix(mix(stream_, tag), index));
}

}  // namespace bkr
