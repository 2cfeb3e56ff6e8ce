#include "cfou/fbm.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "cfou/errors.hpp"
#include "cfou/rng.hpp"

namespace cfou {

double fbm_lag_cov(HurstParam h, double dt, long lag) {
    const double twoH = 2.0 * h.h;
    const double m = static_cast<double>(std::labs(lag));
    if (lag == 0) return std::pow(dt, twoH);
    return 0.5 * std::pow(dt, twoH) *
           (std::pow(m + 1.0, twoH) - 2.0 * std::pow(m, twoH) + std::pow(m - 1.0, twoH));
}

double fbm_increment_cov(HurstParam h, const GridSpec& grid, int j, int k) {
    if (j < 0 || k < 0 || j >= grid.n_steps || k >= grid.n_steps)
        throw std::invalid_argument("fbm_increment_cov: index out of range");
    return fbm_lag_cov(h, grid.dt(), static_cast<long>(j) - k);
}

namespace detail {

void fft_pow2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

} // namespace detail

namespace {

// Eigenvalues of the minimal power-of-two circulant embedding of the
// increment covariance sequence, shared across samples of the same (h, grid).
struct Embedding {
    std::size_t m = 0;              // embedding length (power of two, >= 2(n-1), >= 2)
    std::vector<double> eigen;      // DFT of the embedded covariance row
    bool nonneg = false;            // all eigenvalues >= -1e-10 (clamped)
};

Embedding build_embedding(HurstParam h, const GridSpec& grid) {
    const int n = grid.n_steps;
    std::size_t m = 2;
    while (m < 2 * static_cast<std::size_t>(std::max(n - 1, 1))) m <<= 1;

    std::vector<std::complex<double>> c(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lag = std::min(j, m - j);
        c[j] = fbm_lag_cov(h, grid.dt(), static_cast<long>(lag));
    }
    detail::fft_pow2(c);

    Embedding e;
    e.m = m;
    e.eigen.resize(m);
    e.nonneg = true;
    for (std::size_t j = 0; j < m; ++j) {
        double ev = c[j].real();
        if (ev < 0.0) {
            if (ev < -1e-10) {
                e.nonneg = false;
            } else {
                ev = 0.0;
            }
        }
        e.eigen[j] = ev;
    }
    return e;
}

struct EmbeddingKey {
    double h;
    double dt;
    int n;
    friend bool operator<(const EmbeddingKey& a, const EmbeddingKey& b) {
        if (a.h != b.h) return a.h < b.h;
        if (a.dt != b.dt) return a.dt < b.dt;
        return a.n < b.n;
    }
};

const Embedding& cached_embedding(HurstParam h, const GridSpec& grid) {
    static std::map<EmbeddingKey, Embedding> cache;
    static std::shared_mutex mtx;
    const EmbeddingKey key{h.h, grid.dt(), grid.n_steps};
    {
        std::shared_lock lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    Embedding e = build_embedding(h, grid);
    std::unique_lock lock(mtx);
    return cache.emplace(key, std::move(e)).first->second;
}

Eigen::LLT<Eigen::MatrixXd> cholesky_of_cov(HurstParam h, const GridSpec& grid) {
    const int n = grid.n_steps;
    Eigen::MatrixXd cov(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= j; ++k) {
            const double v = fbm_lag_cov(h, grid.dt(), j - k);
            cov(j, k) = v;
            cov(k, j) = v;
        }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success)
        throw numerical_error("sample_fbm_cholesky: increment covariance is numerically "
                              "non positive definite (n=" + std::to_string(n) +
                              ", h=" + std::to_string(h.h) + ")");
    return llt;
}

RealFbmPath cholesky_sample(HurstParam h, const GridSpec& grid, std::uint64_t seed,
                            SampleMethod tag) {
    const int n = grid.n_steps;
    const auto llt = cholesky_of_cov(h, grid);
    GaussianStream gs(seed);
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) z(i) = gs.next();
    Eigen::VectorXd x = llt.matrixL() * z;
    RealFbmPath path{grid, std::vector<double>(x.data(), x.data() + n), tag};
    return path;
}

} // namespace

RealFbmPath sample_fbm(HurstParam h, const GridSpec& grid, std::uint64_t seed) {
    const Embedding& emb = cached_embedding(h, grid);
    if (!emb.nonneg)
        return cholesky_sample(h, grid, seed, SampleMethod::cholesky_fallback);

    const std::size_t m = emb.m;
    GaussianStream gs(seed);
    std::vector<std::complex<double>> w(m);
    // Gaussian consumption order: k=0, then (re,im) pairs for k=1..m/2-1, then k=m/2.
    w[0] = std::sqrt(emb.eigen[0]) * gs.next();
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double s = std::sqrt(emb.eigen[k] * 0.5);
        const double re = gs.next();
        const double im = gs.next();
        w[k] = std::complex<double>(s * re, s * im);
        w[m - k] = std::conj(w[k]);
    }
    w[m / 2] = std::sqrt(emb.eigen[m / 2]) * gs.next();

    detail::fft_pow2(w);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    RealFbmPath path{grid, std::vector<double>(grid.n_steps), SampleMethod::circulant_fft};
    for (int k = 0; k < grid.n_steps; ++k)
        path.increments[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(k)].real() * scale;
    return path;
}

RealFbmPath sample_fbm_cholesky(HurstParam h, const GridSpec& grid, std::uint64_t seed, int cap) {
    if (grid.n_steps > cap)
        throw resource_error("sample_fbm_cholesky: n_steps=" + std::to_string(grid.n_steps) +
                             " exceeds oracle cap " + std::to_string(cap));
    return cholesky_sample(h, grid, seed, SampleMethod::cholesky);
}

NoisePath sample_complex_noise(HurstParam h, const GridSpec& grid, std::uint64_t seed) {
    const RealFbmPath b1 = sample_fbm(h, grid, sub_seed(seed, 0));
    const RealFbmPath b2 = sample_fbm(h, grid, sub_seed(seed, 1));
    NoisePath noise{grid, std::vector<std::complex<double>>(grid.n_steps)};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < grid.n_steps; ++k) {
        const auto i = static_cast<std::size_t>(k);
        noise.increments[i] = std::complex<double>(b1.increments[i], b2.increments[i]) * inv_sqrt2;
    }
    return noise;
}

} // namespace cfou
