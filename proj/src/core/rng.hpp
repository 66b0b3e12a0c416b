#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace kac {

/// SplitMix64 step; used for seed derivation only.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Child seed for the `index`-th sub-stream of `parent` (grid -> graph -> dataset).
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return splitmix64(splitmix64(parent) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Portable random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are implementation-defined, so every
/// transform below is written out by hand to keep outputs identical across
/// toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound).
    std::size_t index(std::size_t bound) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>(engine_()) * bound) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Standard normal via Box-Muller; the sine branch is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * M_PI * uniform();
        spare_ = r * std::sin(angle);
        has_spare_ = true;
        return r * std::cos(angle);
    }

    double exponential() { return -std::log(uniform()); }

    double gumbel() { return -std::log(-std::log(uniform())); }

    /// Uniform magnitude in [lo, hi] with a random sign.
    double signed_uniform(double lo, double hi) {
        const double magnitude = uniform(lo, hi);
        return bernoulli(0.5) ? magnitude : -magnitude;
    }

    /// Dirichlet(1, ..., 1) draw of the given dimension.
    std::vector<double> flat_dirichlet(std::size_t dim) {
        std::vector<double> out(dim);
        double total = 0.0;
        for (auto& v : out) {
            v = exponential();
            total += v;
        }
        for (auto& v : out) v /= total;
        return out;
    }

    /// Fisher-Yates shuffle (std::shuffle's algorithm is unspecified).
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[index(i)]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace kac
