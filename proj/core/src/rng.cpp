#include "qloss/rng.hpp"

#include <cmath>

#include "qloss/errors.hpp"

namespace qloss {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(const RngSpec& spec) : engine_(splitmix64(spec.seed ^ fnv1a64(spec.stream))) {}

double Rng::uniform() {
    // 53-bit mantissa shifted into (0, 1); never returns an endpoint.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) throw ConfigError("rng: exponential rate must be positive");
    return -std::log(uniform()) / rate;
}

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) throw ConfigError("rng: uniform_index needs n > 0");
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

}  // namespace qloss
