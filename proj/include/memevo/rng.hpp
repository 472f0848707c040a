#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace memevo {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a master
/// seed: stream i of master m is seeded with splitmix64(m ^ splitmix64(i + 1)).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master ^ splitmix64(stream + 1));
}

/// Seedable random stream. Every stochastic choice in the library goes through
/// one of these so that a (seed, config) pair reproduces a run exactly.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    bool bernoulli(double p) { return uniform() < p; }
    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    std::string state() const;
    void set_state(const std::string& text);

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace memevo
