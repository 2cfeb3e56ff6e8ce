#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cfou/grid.hpp"

namespace cfou {

enum class SampleMethod { circulant_fft, cholesky_fallback, cholesky };

// Increments of one real fBm path on a uniform grid.
struct RealFbmPath {
    GridSpec grid;
    std::vector<double> increments; // n_steps values, Delta B_k
    SampleMethod method = SampleMethod::circulant_fft;
};

// Increments of complex fBm: Delta zeta_k = (Delta B1_k + i Delta B2_k)/sqrt(2).
struct NoisePath {
    GridSpec grid;
    std::vector<std::complex<double>> increments;
};

// Covariance of fBm increments at lag m on a uniform grid with step dt:
//   rho(j,k) = dt^{2H} * 1/2 (|m+1|^{2H} - 2|m|^{2H} + |m-1|^{2H}),  m = |j-k|.
double fbm_lag_cov(HurstParam h, double dt, long lag);

// rho(j,k) for grid increments j,k (0-based, < n_steps). Symmetric in (j,k).
double fbm_increment_cov(HurstParam h, const GridSpec& grid, int j, int k);

// Exact-covariance fBm increments via circulant embedding (FFT synthesis).
// Deterministic in (h, grid, seed). Falls back to the dense Cholesky factor
// when the minimal embedding has an eigenvalue below -1e-10; the fallback is
// recorded in RealFbmPath::method.
RealFbmPath sample_fbm(HurstParam h, const GridSpec& grid, std::uint64_t seed);

// Dense-factorization oracle, O(n^3). n_steps must not exceed `cap`.
RealFbmPath sample_fbm_cholesky(HurstParam h, const GridSpec& grid, std::uint64_t seed,
                                int cap = 2048);

// Two independent real fBm draws (sub-seeds 0 and 1 of `seed`), combined as
// (B1 + i B2)/sqrt(2).
NoisePath sample_complex_noise(HurstParam h, const GridSpec& grid, std::uint64_t seed);

namespace detail {
// In-place iterative radix-2 FFT, forward sign convention e^{-2 pi i j k / n}.
// n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a);
} // namespace detail

} // namespace cfou
