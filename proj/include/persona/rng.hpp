#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace persona {

/// Deterministic 64-bit generator (splitmix64). The standard <random>
/// distributions are implementation-defined, so every sampler the project
/// needs is spelled out here; identical seeds give identical streams on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    /// Independent stream for element `index` of a run seeded with `seed`.
    static Rng stream(std::uint64_t seed, std::uint64_t index) {
        Rng mixer(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
        std::uint64_t s = mixer.next_u64();
        return Rng(s);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<long long>(next_u64() % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller; one fresh pair of uniforms per draw keeps streams
    /// position-independent.
    double normal(double mean = 0.0, double sigma = 1.0) {
        double u1 = uniform01();
        double u2 = uniform01();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
        return mean + sigma * z;
    }

    /// Knuth's product method; fine for the rates this project uses.
    long long poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        long long count = 0;
        // split large rates so the product never underflows
        while (lambda > 500.0) {
            count += poisson(500.0);
            lambda -= 500.0;
        }
        double limit = std::exp(-lambda);
        double prod = uniform01();
        while (prod > limit) {
            ++count;
            prod *= uniform01();
        }
        return count;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_u64() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace persona
