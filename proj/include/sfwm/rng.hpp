#pragma once

#include <cstdint>
#include <string_view>

namespace sfwm
{

// Pinned so run manifests can state exactly what produced a stream.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256++ 1.0 (splitmix64 seeding)";

// splitmix64 step; used for state expansion and sub-stream derivation.
std::uint64_t splitmix64_next(std::uint64_t &state);

// Decorrelated seed for sub-stream `stream_index` of a run seeded with `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index);

// xoshiro256++ with the sampling helpers the simulator needs. All
// distributions are implemented here so a (seed, config) pair pins the
// output streams independently of the standard library.
class Rng
{
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double uniform();

    bool bernoulli(double probability);

    // Inversion sampling; mean must be > 0.
    double exponential(double mean);

    // Box-Muller with cached spare.
    double normal(double mean, double sigma);

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace sfwm
