#pragma once

#include <cstdint>
#include <random>

namespace bairelab {

/// Every seeded corpus in the project is drawn from this engine, whose output
/// sequence is fixed by the C++ standard.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection: draws until the raw 64-bit
/// value falls below the largest multiple of bound, then reduces modulo
/// bound. Unlike std::uniform_int_distribution the result sequence is the
/// same on every standard library.
[[nodiscard]] std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

} // namespace bairelab
