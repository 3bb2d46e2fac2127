#pragma once

#include <cstdint>
#include <random>

namespace survperm {

/// Deterministic stream of random numbers identified by (seed, stream).
/// Stream seeds are derived with splitmix64 and drive a mt19937_64 engine;
/// both are fully specified, so sequences reproduce across platforms.
/// Uniform doubles are produced from the top 53 bits directly (the standard
/// library distributions are not portable).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : engine_(derive(seed, stream)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % bound;
    }

    static constexpr const char* algorithm = "splitmix64-seeded mt19937_64";

private:
    static std::uint64_t splitmix64(std::uint64_t& state) {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t state = seed;
        std::uint64_t mixed = splitmix64(state);
        state = mixed ^ stream;
        return splitmix64(state);
    }

    std::mt19937_64 engine_;
};

}  // namespace survperm
