#pragma once

#include <cstdint>
#include <random>

namespace lmg {

// Deterministic keyed random source.
//
// Stream-splitting rule: a stream is identified by a 64-bit key derived from
// the master seed by repeated splitmix64 mixing, child(i) = mix(key, i).
// One substream is used per circuit execution (one sampling session of one
// circuit), so concurrent executions draw from independent engines and the
// results do not depend on scheduling order.
struct RngStream {
    std::uint64_t key = 0;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    explicit RngStream(std::uint64_t seed = 0) : key(mix(seed)) {}

    RngStream child(std::uint64_t index) const {
        RngStream s(0);
        s.key = mix(key ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return s;
    }

    std::mt19937_64 engine() const { return std::mt19937_64(key); }
};

}  // namespace lmg
