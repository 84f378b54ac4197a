#pragma once

#include <cstdint>
#include <string_view>

namespace diffn {

// xoshiro256** with splitmix64 seeding. Fixed, portable algorithms so that
// seeds reproduce identical instance streams everywhere; bounded() reduces
// by remainder, which is part of the documented stream contract.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Xoshiro256 {
  public:
    explicit Xoshiro256(std::uint64_t seed) {
        for (auto& w : s_) w = splitmix64(seed);
    }

    std::uint64_t next() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    std::uint64_t bounded(std::uint64_t k) { return k == 0 ? 0 : next() % k; }

    bool coin() { return (next() & 1) != 0; }

  private:
    std::uint64_t s_[4];
};

inline std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Per-trial stream: derived from the base seed, the property name and the
// trial index, so trials are independent and reports reproducible.
inline Xoshiro256 trial_stream(std::uint64_t seed, std::string_view property, std::uint64_t trial) {
    std::uint64_t state = seed;
    std::uint64_t mixed = splitmix64(state) ^ fnv1a64(property);
    state = mixed;
    mixed = splitmix64(state) ^ (trial * 0x9E3779B97F4A7C15ULL + 1);
    return Xoshiro256(mixed);
}

}  // namespace diffn
