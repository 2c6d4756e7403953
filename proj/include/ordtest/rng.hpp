#ifndef ORDTEST_RNG_HPP
#define ORDTEST_RNG_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ordtest/errors.hpp"

namespace ordtest {

// SplitMix64 generator. Self-contained so that seeded runs are bit-identical
// across standard libraries (std::uniform_int_distribution is not portable).
// Every tester consumes a single root seed; per-trial generators are derived
// by counter-mode splitting (see derive()).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw parameter_error("Rng::below(0)");
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform double in [0,1) with 53 random bits.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Counter-mode child seed: independent stream per (seed, index) pair.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x5851f42d4c957f2dULL * (index + 1)));
        mix.next_u64();
        return mix.next_u64();
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Sorted uniform k-subset of {0,...,n-1}. Floyd's algorithm for small k,
    // a partial Fisher-Yates pass when k is a large fraction of n.
    std::vector<int> sorted_subset(int n, int k) {
        if (k < 0 || k > n) throw parameter_error("sorted_subset: k out of range");
        if (k == n) {
            std::vector<int> all(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) all[std::size_t(i)] = i;
            return all;
        }
        if (std::int64_t(k) * k <= 4 * std::int64_t(n) || k <= 32) {
            std::vector<int> picked;
            picked.reserve(std::size_t(k));
            for (int j = n - k; j < n; ++j) {
                int t = int(below(std::uint64_t(j) + 1));
                if (std::find(picked.begin(), picked.end(), t) == picked.end())
                    picked.push_back(t);
                else
                    picked.push_back(j);
            }
            std::sort(picked.begin(), picked.end());
            return picked;
        }
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[std::size_t(i)] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + int(below(std::uint64_t(n - i)));
            std::swap(pool[std::size_t(i)], pool[std::size_t(j)]);
        }
        pool.resize(std::size_t(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

private:
    std::uint64_t state_;
};

} // namespace ordtest

#endif
