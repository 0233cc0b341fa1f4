#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace skl {

// Deterministic, platform-independent randomness.  mt19937_64 output is
// pinned by the standard, and we do the bounding ourselves because
// std::uniform_int_distribution is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Independent stream for a named consumer (checks own their points, so
    // their samples must not depend on scheduling order).
    static Rng stream(std::uint64_t seed, const std::string& tag) {
        std::uint64_t h = 1469598103934665603ull; // FNV-1a
        for (unsigned char ch : tag) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        return Rng(splitmix(seed ^ h));
    }

    std::uint64_t next() { return eng_(); }

    // uniform in [0, bound) by rejection; bound > 0
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace skl
