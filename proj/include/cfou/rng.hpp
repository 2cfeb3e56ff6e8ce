#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cfou {

// Stateless splitmix64 finalizer. Used for all seed derivation so that
// derived streams are documented at byte level and reproduce across
// platforms and versions.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Sub-seed for the k-th independent component drawn from a user seed.
// sub_seed(s, k) = splitmix64(s ^ (k+1) * 0xD1B54A32D192ED03).
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t k) noexcept {
    return splitmix64(seed ^ ((k + 1) * 0xD1B54A32D192ED03ULL));
}

// Replica seed for Monte Carlo work items:
//   s1 = splitmix64(base ^ (t_index+1) * 0x9E3779B97F4A7C15)
//   s  = splitmix64(s1   ^ (replica+1) * 0xC2B2AE3D27D4EB4F)
inline std::uint64_t mc_seed(std::uint64_t base_seed, std::uint64_t t_index,
                             std::uint64_t replica) noexcept {
    std::uint64_t s = splitmix64(base_seed ^ ((t_index + 1) * 0x9E3779B97F4A7C15ULL));
    return splitmix64(s ^ ((replica + 1) * 0xC2B2AE3D27D4EB4FULL));
}

// Deterministic standard-normal stream: mt19937_64 (bit-exact per the C++
// standard) plus an explicit Box-Muller transform. std::normal_distribution
// is implementation-defined, so it is not used anywhere in the library.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace cfou
