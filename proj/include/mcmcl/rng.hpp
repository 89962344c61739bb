#pragma once

#include <cstdint>
#include <random>

namespace mcmcl {

// Every stochastic component draws through this wrapper instead of the
// <random> distributions, whose output is implementation defined. Raw
// engine words are portable, so seeded runs reproduce everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform index in [0, n)
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    std::uint64_t next_word() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace mcmcl
