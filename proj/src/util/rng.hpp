#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cdds::rng {

// FNV-1a, 64-bit. Also used for content hashing of configs and gene lists.
inline uint64_t fnv1a(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic random stream. Streams are addressed by (seed, name) so that
// one consumer taking more or fewer draws never shifts another stream.
// The generator is splitmix64; tests/golden/*.py mirror it exactly.
class Stream {
public:
    Stream() : state_(0) {}
    explicit Stream(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0,1).
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0,1); endpoints excluded for logit transforms.
    double next_open01() {
        double u = next_double();
        if (u <= 0.0) u = 0x1.0p-53;
        return u;
    }

    // Box-Muller without caching: two draws per call, deterministic count.
    double next_gaussian() {
        double u1 = next_open01();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Uniform integer in [0, bound). Modulo bias is irrelevant at our scales
    // and keeps the Python mirror trivial.
    uint64_t next_below(uint64_t bound) { return bound ? next_u64() % bound : 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = size_t(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

inline Stream named_stream(uint64_t seed, std::string_view name) {
    uint64_t h = fnv1a(name);
    // Mix the seed in after the name hash so that seed changes perturb all bits.
    uint64_t s = h ^ (seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    return Stream(s);
}

inline Stream named_stream(uint64_t seed, std::string_view name, uint64_t instance) {
    std::string key(name);
    key += '#';
    key += std::to_string(instance);
    return named_stream(seed, key);
}

}  // namespace cdds::rng
