#pragma once

// Deterministic case generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    int odd_levels(int lo, int hi) {
        int n = integer(lo, hi);
        return n % 2 == 0 ? n + 1 : n;
    }
    std::vector<double> samples(std::size_t n, double lo, double hi) {
        std::vector<double> out(n);
        for (double& v : out) v = uniform(lo, hi);
        return out;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace testsupport
