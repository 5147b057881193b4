#pragma once

#include <cmath>
#include <cstdint>

namespace wlab {

// Counter-based generator: output i of a stream is a pure function of
// (master seed, stream id, i), so tasks scheduled in any order draw
// identical values. Mixing is two rounds of the splitmix64 finalizer.
class CounterRng {
public:
    CounterRng() : CounterRng(0, 0) {}
    CounterRng(std::uint64_t master_seed, std::uint64_t stream)
        : key_(mix(mix(master_seed ^ 0x9e3779b97f4a7c15ull) ^ stream)), counter_(0) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() { return mix(key_ ^ counter_++ * 0xd1342543de82ef95ull); }

    // uniform in [0,1)
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // standard normal, Box-Muller; one value per call, partner discarded
    double next_normal() {
        double u1 = next_double(), u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace wlab
