#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace qht {

/// Deterministic pseudo-random stream with keyed child derivation.
///
/// The core generator is xoshiro256++ seeded through splitmix64, so a given
/// seed yields the same draw sequence on every platform. Child streams are
/// derived from a stream's immutable key, not from its evolving state:
/// child("a", 0) is the same stream whether it is requested before or after
/// any number of draws, and children with distinct (label, index) pairs are
/// statistically independent.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform draw in [0, 1).
    double uniform();

    /// Standard normal draw (Box-Muller, pairs cached).
    double normal();

    /// Independent stream keyed by (label, index) under this stream's key.
    RandomStream child(std::string_view label, std::uint64_t index) const;

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qht
