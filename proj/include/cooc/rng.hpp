#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace cooc {

/// Seeded generator with hand-rolled draws. std::*_distribution output is
/// implementation-defined, which would break the byte-identical-rerun
/// contract, so every draw here is specified exactly.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0. Rejection sampling, unbiased.
    uint64_t uniform_u64(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (true) {
            uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    size_t uniform_index(size_t bound) { return static_cast<size_t>(uniform_u64(bound)); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (one value per call; pair cached).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform_double();
        double u2 = uniform_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            size_t j = uniform_index(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    /// k distinct indices drawn uniformly from [0, n), in draw order.
    std::vector<size_t> sample_indices(size_t n, size_t k);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

inline std::vector<size_t> SeededRng::sample_indices(size_t n, size_t k) {
    // partial Fisher-Yates over an index array
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<size_t> out;
    out.reserve(k);
    for (size_t i = 0; i < k && i < n; ++i) {
        size_t j = i + uniform_index(n - i);
        std::swap(idx[i], idx[j]);
        out.push_back(idx[i]);
    }
    return out;
}

} // namespace cooc
