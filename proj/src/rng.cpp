#include "sfwm/rng.hpp"

#include "sfwm/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace sfwm
{

std::uint64_t splitmix64_next(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index)
{
    std::uint64_t state = seed;
    const std::uint64_t mixed = splitmix64_next(state);
    state = mixed ^ (stream_index * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
    return splitmix64_next(state);
}

Rng::Rng(std::uint64_t seed)
{
    std::uint64_t state = seed;
    for (auto &word : state_)
    {
        word = splitmix64_next(state);
    }
}

std::uint64_t Rng::next_u64()
{
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
}

double Rng::uniform()
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool Rng::bernoulli(double probability)
{
    return uniform() < probability;
}

double Rng::exponential(double mean)
{
    if (!(mean > 0.0))
    {
        throw DomainError("Rng::exponential: mean must be > 0");
    }
    // 1 - uniform() is in (0, 1], so the log is finite.
    return -mean * std::log(1.0 - uniform());
}

double Rng::normal(double mean, double sigma)
{
    if (has_spare_)
    {
        has_spare_ = false;
        return mean + sigma * spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return mean + sigma * radius * std::cos(angle);
}

} // namespace sfwm
