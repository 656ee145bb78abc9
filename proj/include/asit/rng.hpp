#ifndef ASIT_RNG_HPP
#define ASIT_RNG_HPP

#include <cstdint>
#include <random>

namespace asit {

/// Project-wide PRNG: std::mt19937_64 (bit-exact output across standard
/// library implementations) with hand-coded variate transforms, so every
/// stream of doubles is reproducible from its seed alone. Child streams
/// are derived by splitmix64-mixing the parent seed with a tag; deriving
/// never consumes state from the parent.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent child stream for (this seed, tag).
    Rng derive(std::uint64_t tag) const;

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform in [0, 2*pi).
    double uniform_phase();

    /// Standard normal via Box-Muller (explicit formula, no
    /// std::normal_distribution, whose output is implementation-defined).
    double gaussian();

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer, used for seed derivation.
std::uint64_t mix64(std::uint64_t z);

}  // namespace asit

#endif
