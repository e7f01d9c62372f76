#ifndef BWK_RNG_H_
#define BWK_RNG_H_

#include <cstdint>

namespace bwk {

// SplitMix64 output function.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Child seed number `index` of `parent`. Children of one parent are
// decorrelated from each other and from the parent itself.
constexpr std::uint64_t SplitSeed(std::uint64_t parent, std::uint64_t index) {
  return Mix64(parent ^ Mix64(index ^ 0xD1B54A32D192ED03ULL));
}

// Maps 64 random bits to a double in [0, 1).
constexpr double BitsToUnit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-mode uniform draw: a pure function of (seed, a, b, c). Used for
// environment realizations so that the value drawn for a given entry does not
// depend on the order in which entries are requested.
constexpr double CounterUniform(std::uint64_t seed, std::uint64_t a,
                                std::uint64_t b, std::uint64_t c) {
  return BitsToUnit(SplitSeed(SplitSeed(SplitSeed(seed, a), b), c));
}

// Stream identifiers for SplitSeed(run_seed, ...).
inline constexpr std::uint64_t kEnvironmentStream = 1;
inline constexpr std::uint64_t kLearnerStream = 2;

// Uniform double in [0, 1) from a 64-bit engine, independent of the standard
// library's distribution implementations.
template <typename Engine>
double UniformUnit(Engine& engine) {
  return BitsToUnit(engine());
}

}  // namespace bwk

#endif  // BWK_RNG_H_
