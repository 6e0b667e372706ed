#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace qloss {

/// Identifies a reproducible random stream: the same (seed, stream) pair
/// always reproduces the same variate sequence bit-exactly.
struct RngSpec {
    std::uint64_t seed = 0;
    std::string stream = "default";
};

/// Seedable, splittable generator. Streams are split by hashing the stream
/// label into the seed, so independent replications can use the same seed
/// with distinct labels. All variates are derived by inverse transform from
/// 53-bit uniforms, keeping sequences identical across platforms.
class Rng {
public:
    explicit Rng(const RngSpec& spec);

    /// Uniform on (0, 1), never exactly 0 or 1.
    double uniform();

    /// Exponential with the given rate.
    double exponential(double rate);

    /// Uniform integer in [0, n), n > 0; rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n);

    /// Algorithm identifier recorded in simulation reports.
    static const char* algorithm() { return "mt19937_64/inverse-transform"; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qloss
