/// @file rng.hpp
/// @brief Deterministic PRNG for scenario generation and delivery schedules.

#pragma once

#include <cstdint>

namespace mvr::sim {

/// splitmix64 (Steele, Lea & Flood / Vigna). Chosen over std::mt19937 so that
/// simulation reports are reproducible across implementations: the update is
///   state += 0x9E3779B97F4A7C15
///   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
/// Any 64-bit seed is valid, including 0.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, bound); bound 0 yields 0. Plain modulo: the tiny
    /// bias is irrelevant for test scheduling and keeps the draw sequence
    /// easy to reproduce elsewhere.
    std::uint64_t next_below(std::uint64_t bound) {
        return bound == 0 ? 0 : next_u64() % bound;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// True with probability p (one draw consumed either way).
    bool chance(double p) { return next_unit() < p; }

  private:
    std::uint64_t state_;
};

}  // namespace mvr::sim
