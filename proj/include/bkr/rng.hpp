#pragma once

#include <cstdint>

namespace bkr {

/// Named sub-stream tags used to derive disjoint RNG streams from one user
/// seed. Every consumer of randomness draws from a child stream keyed by
/// (tag, index), so parallel Monte Carlo iterations are reproducible and
/// independent of scheduling.
namespace stream_tag {
inline constexpr std::uint64_t weights = 1;       // Dirichlet draw, iteration t
inline constexpr std::uint64_t permutation = 2;   // exchangeability permutation, iteration t
inline constexpr std::uint64_t pair = 3;          // per-pair sub-stream under a permutation stream
inline constexpr std::uint64_t landmarks = 4;     // Nystrom landmark sampling
inline constexpr std::uint64_t nhst = 5;          // permutation-test replicates
inline constexpr std::uint64_t tau_weights = 6;   // decoupled tau budget, weight draws
inline constexpr std::uint64_t tau_permutation = 7;  // decoupled tau budget, permutations
inline constexpr std::uint64_t synthetic = 8;     // dataset generation
inline constexpr std::uint64_t benchmark = 9;     // benchmark repetition layout
}  // namespace stream_tag

/// Splittable counter-seeded generator (xoshiro256++ state initialised by
/// splitmix64 from a (seed, stream id) pair). Identical (seed, stream)
/// reproduce identical draw sequences; child() derives a disjoint stream
/// without touching this stream's state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double();

    /// Uniform double in the open interval (0, 1).
    double next_open_double();

    /// Unit-rate exponential via inverse CDF.
    double next_exponential();

    /// Standard normal (Box-Muller, pairs cached).
    double next_gaussian();

    /// Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Derive a disjoint stream keyed by (tag, index). Depends only on this
    /// stream's identity, not on how many draws were consumed.
    RngStream child(std::uint64_t tag, std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

private:
    std::uint64_t state_[4];
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    double spare_gaussian_ = 0.0;
    bool has_spare_gaussian_ = false;
};

}  // namespace bkr
