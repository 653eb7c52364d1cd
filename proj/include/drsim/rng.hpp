#pragma once
// Deterministic random primitives.
//
// Everything downstream of a seed must be bit-reproducible across platforms,
// so no std::uniform_*_distribution or std::shuffle is used anywhere (their
// algorithms are implementation-defined). All randomness flows through
// mt19937_64 plus the fixed mappings below.

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace drsim {

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n), n >= 1, via rejection sampling.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: n must be >= 1");
    if (n == 1) return 0;
    const std::uint64_t threshold = (0 - n) % n;  // (2^64 - n) mod n
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % n;
    }
}

// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle_vector(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

// Weighted index sampler over a fixed weight vector (cumulative-sum inversion).
class DiscreteSampler {
  public:
    explicit DiscreteSampler(const std::vector<double>& weights) : cum_(weights.size()) {
        if (weights.empty()) throw std::invalid_argument("DiscreteSampler: empty weights");
        double running = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] < 0.0) throw std::invalid_argument("DiscreteSampler: negative weight");
            running += weights[i];
            cum_[i] = running;
        }
        if (!(running > 0.0)) throw std::invalid_argument("DiscreteSampler: zero total weight");
    }

    std::size_t sample(std::mt19937_64& rng) const {
        const double u = uniform01(rng) * cum_.back();
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
        const std::size_t idx = static_cast<std::size_t>(it - cum_.begin());
        return std::min(idx, cum_.size() - 1);
    }

  private:
    std::vector<double> cum_;
};

}  // namespace drsim
