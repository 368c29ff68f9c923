#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace spinscale::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless mixing of two 64-bit words; basis of all counter-addressable draws.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    s = splitmix64(s) ^ b;
    return splitmix64(s);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix(mix(a, b), c);
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return mix(mix(a, b, c), d);
}

// FNV-1a, used to fan the master seed out per suite/purpose.
inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : tag) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    return mix(master, hash_tag(tag));
}

// Uniform in (0,1]; never returns 0, so log() is safe.
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

// Standard normal addressable by (key, counter); every pair gives an
// independent draw, no sequential state involved.
inline double counter_normal(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t h = mix(key, counter);
    std::uint64_t s = h;
    const double u1 = to_unit(splitmix64(s));
    const double u2 = to_unit(splitmix64(s));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Small sequential generator with a fully specified algorithm, so that
// sampled configurations are reproducible across platforms.
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : state_(mix(seed, 0x5eedULL)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    double uniform() { return to_unit(next_u64()); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Counts exponential arrivals; exact for any lambda, O(lambda) time.
    std::uint64_t poisson(double lambda) {
        std::uint64_t k = 0;
        double s = -std::log(uniform());
        while (s <= lambda) {
            ++k;
            s += -std::log(uniform());
        }
        return k;
    }

  private:
    std::uint64_t state_;
};

}  // namespace spinscale::rng
