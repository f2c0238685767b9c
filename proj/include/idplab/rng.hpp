// Deterministic random number generation: xoshiro256** seeded through
// splitmix64, plus exact Poisson sampling. All simulation randomness in the
// toolkit flows through named, seed-derived streams so reruns are bit-exact.
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace idplab {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next();
};

class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // uniform in [0,1) with 53 random bits
    double next_double();

    double uniform(double lo, double hi);

    // index into a nonempty weight vector, weights >= 0 with positive total
    std::size_t categorical(std::span<const double> weights, double total);

    // exact Poisson(mean): sequential inversion below 30, transformed
    // rejection with squeeze above (no normal approximation)
    std::uint64_t poisson(double mean);

  private:
    std::array<std::uint64_t, 4> s_;
};

// Derives an independent substream seed from a master seed, a purpose tag
// and an index. Distinct (tag, index) pairs give unrelated streams.
std::uint64_t derive_stream(std::uint64_t master, std::string_view tag,
                            std::uint64_t index = 0);

}  // namespace idplab
