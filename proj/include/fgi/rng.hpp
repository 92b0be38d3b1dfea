#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace fgi {

// Self-contained xoshiro256++ with a splitmix64-seeded state. Keeps chains
// bit-reproducible across platforms and standard libraries; std::*_distribution
// is implementation-defined, so gaussians are generated here as well.
struct rng {
    std::uint64_t s[4];

    explicit rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& si : s) si = splitmix64(x);
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // uniform in (0,1); never returns 0 so log() is safe
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, deterministic pair caching
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Splittable seed derivation for independent chains in a scan: every
// (master_seed, label, index) combination yields a decorrelated stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index = 0) {
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::uint64_t x = master ^ h;
    std::uint64_t a = rng::splitmix64(x);
    x ^= index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
    std::uint64_t b = rng::splitmix64(x);
    return a ^ rng::rotl(b, 32);
}

} // namespace fgi
