#pragma once

#include <cstdint>

namespace minrank {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Independent seed stream derived from a user seed. Used so that e.g. the
// submatrix search, verification trials and benchmark instances never share
// an RNG sequence.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (stream * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull);
    return splitmix64(s);
}

// 53-bit uniform double in [0,1). Hand-rolled so results do not depend on the
// standard library's distribution implementation.
inline double unit_double(std::uint64_t draw) {
    return static_cast<double>(draw >> 11) * 0x1.0p-53;
}

}  // namespace minrank
