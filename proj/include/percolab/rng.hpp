#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace percolab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for task `task` of a run with master seed `seed`.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t task) {
    return splitmix64(splitmix64(seed) ^ splitmix64(task + 0x632be59bd9b4e019ULL));
}

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}
    Rng(std::uint64_t seed, std::uint64_t task) : engine_(stream_seed(seed, task)) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // uniform on (0,1]
    double uniform_pos() { return 1.0 - uniform(); }

    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }
    bool bernoulli(double p) { return uniform() < p; }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    double exponential(double mean) { return -mean * std::log(uniform_pos()); }

    Rng split(std::uint64_t task) { return Rng(engine_() ^ splitmix64(task)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace percolab
