#pragma once

#include <cstdint>
#include <random>

namespace agemec {

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t root_seed, std::uint64_t stream_tag) {
    std::seed_seq seq{root_seed, stream_tag, std::uint64_t{0x9e3779b97f4a7c15ULL}};
    return Rng(seq);
}

/// All randomness of one experiment flows from a single root seed split
/// into independent named streams so that replays are reproducible even
/// when one consumer changes its draw count.
struct RngPool {
    Rng env;      // world init + packet generation
    Rng init;     // network parameter initialization
    Rng explore;  // epsilon gating + random actions
    Rng replay;   // batch sampling

    explicit RngPool(std::uint64_t root_seed)
        : env(make_stream(root_seed, 1)),
          init(make_stream(root_seed, 2)),
          explore(make_stream(root_seed, 3)),
          replay(make_stream(root_seed, 4)) {}
};

inline double uniform01(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace agemec
