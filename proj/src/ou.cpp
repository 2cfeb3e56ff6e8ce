#include "cfou/ou.hpp"

#include <cmath>

#include "cfou/errors.hpp"
#include "cfou/quadrature.hpp"

namespace cfou {

namespace {

void check_estimation_range(const HurstParam& h, const char* where) {
    if (h.h < 0.5 || h.h >= 0.75)
        throw std::invalid_argument(std::string(where) + ": h must lie in [1/2, 3/4), got " +
                                    std::to_string(h.h));
}

} // namespace

Trajectory simulate(const ModelParams& params, const GridSpec& grid, std::uint64_t seed) {
    check_estimation_range(params.h, "simulate");
    const NoisePath noise = sample_complex_noise(params.h, grid, seed);
    const Complex decay = std::exp(-params.gamma() * grid.dt());
    const double sa = std::sqrt(params.a);

    Trajectory traj{grid, std::vector<Complex>(static_cast<std::size_t>(grid.n_steps) + 1),
                    params, seed};
    traj.z[0] = params.z0;
    for (int k = 0; k < grid.n_steps; ++k) {
        const auto i = static_cast<std::size_t>(k);
        traj.z[i + 1] = decay * traj.z[i] + sa * noise.increments[i];
    }
    return traj;
}

Complex wick_correction(const ModelParams& params, const GridSpec& grid) {
    const int n = grid.n_steps;
    const double dt = grid.dt();
    const Complex gbar = std::conj(params.gamma());
    // sum over k>j of e^{-gbar (t_k - t_{j+1})} rho(j,k); pairs at lag m = k-j
    // number n-m, exponent (m-1) dt.
    Complex acc{0.0, 0.0};
    for (int m = n - 1; m >= 1; --m) {
        const double rho = fbm_lag_cov(params.h, dt, m);
        acc += static_cast<double>(n - m) * std::exp(-gbar * ((m - 1) * dt)) * rho;
    }
    return params.a * acc;
}

namespace {

EstimateResult estimate_impl(const Trajectory& traj, Complex wick) {
    const int n = traj.grid.n_steps;
    if (n < 2) throw std::invalid_argument("estimate: need n_steps >= 2");
    const double dt = traj.grid.dt();
    const double t_max = traj.grid.t_max;

    double sum_trap = 0.5 * (std::norm(traj.z.front()) + std::norm(traj.z.back()));
    for (int k = 1; k < n; ++k) sum_trap += std::norm(traj.z[static_cast<std::size_t>(k)]);

    Complex n_path{0.0, 0.0};
    for (int k = 0; k < n; ++k) {
        const auto i = static_cast<std::size_t>(k);
        n_path += std::conj(traj.z[i]) * (traj.z[i + 1] - traj.z[i]);
    }

    const double integral = dt * sum_trap; // int_0^T |Z|^2 dt
    if (!(integral > 0.0))
        throw degenerate_path_error("estimate: degenerate path, integral of |Z|^2 vanishes");

    EstimateResult r;
    r.numerator_correction = wick;
    r.gamma_hat = -(n_path - wick) / integral;
    r.gamma_hat_pathwise = -n_path / integral;
    r.denom = integral / t_max;
    r.t_max = t_max;
    r.n_steps = n;
    return r;
}

} // namespace

EstimateResult estimate(const Trajectory& traj) {
    return estimate_impl(traj, wick_correction(traj.params, traj.grid));
}

EstimateResult estimate(const Trajectory& traj, Complex precomputed_wick) {
    return estimate_impl(traj, precomputed_wick);
}

Complex stationary_autocov(const ModelParams& params, double s, double tol) {
    if (s < 0.0) throw std::invalid_argument("stationary_autocov: lag must be >= 0");
    if (params.h.h <= 0.5)
        throw std::invalid_argument("stationary_autocov: requires h > 1/2");
    if (params.a == 0.0) return {0.0, 0.0};

    const Complex g = params.gamma();
    const Complex gbar = std::conj(g);
    const double p = 2.0 * params.h.h - 2.0;

    // E[Y_{t+s} conj(Y_t)] = a alpha_H / (2 lambda) *
    //   [ e^{-gamma s} int_0^inf e^{-gamma w} w^p dw
    //   + int_0^s e^{-gamma (s-w)} w^p dw
    //   + int_0^inf e^{-gbar u} (u+s)^p du ]
    double worst_err = 0.0;
    auto tail = quad::integrate_0inf_c([&](double w) { return std::exp(-g * w) * std::pow(w, p); }, tol);
    worst_err = std::max(worst_err, tail.est_error);

    Complex middle{0.0, 0.0};
    if (s > 0.0) {
        auto mid = quad::integrate_c(
            [&](double w) { return std::exp(-g * (s - w)) * std::pow(w, p); }, 0.0, s, tol);
        middle = mid.value;
        worst_err = std::max(worst_err, mid.est_error);
    }

    auto shifted = quad::integrate_0inf_c(
        [&](double u) { return std::exp(-gbar * u) * std::pow(u + s, p); }, tol);
    worst_err = std::max(worst_err, shifted.est_error);

    const Complex bracket = std::exp(-g * s) * tail.value + middle + shifted.value;
    const Complex value = params.a * params.h.alpha() / (2.0 * params.lambda) * bracket;
    if (!(std::isfinite(value.real()) && std::isfinite(value.imag())))
        throw numerical_error("stationary_autocov: quadrature did not converge", worst_err);
    return value;
}

GridKernel psi_kernel(const ModelParams& params, const PhiGramPtr& gram) {
    const int n = gram->size();
    const double dt = gram->grid().dt();
    const Complex gbar = std::conj(params.gamma());
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) k(r, s) = std::exp(-gbar * ((r - s) * dt));
    return GridKernel{gram, std::move(k)};
}

GridKernel h_kernel(const ModelParams& params, const PhiGramPtr& gram) {
    return psi_kernel(params, gram).adjoint();
}

GridKernel psi_kernel(const ModelParams& params, const GridSpec& grid) {
    return psi_kernel(params, std::make_shared<const PhiGram>(params.h, grid));
}

GridKernel h_kernel(const ModelParams& params, const GridSpec& grid) {
    return h_kernel(params, std::make_shared<const PhiGram>(params.h, grid));
}

Complex eval_psi_integral(const ModelParams& params, const GridSpec& grid,
                          const NoisePath& noise) {
    if (!(grid == noise.grid))
        throw std::invalid_argument("eval_psi_integral: grid mismatch");
    const int n = grid.n_steps;
    const double dt = grid.dt();
    const Complex decay = std::exp(-std::conj(params.gamma()) * dt);

    // random part: sum_r z_r P_r with P_r = e^{-gbar dt} P_{r-1} + conj(z_r)
    Complex quad_part{0.0, 0.0};
    Complex prefix{0.0, 0.0};
    for (int r = 0; r < n; ++r) {
        const Complex z = noise.increments[static_cast<std::size_t>(r)];
        prefix = decay * prefix + std::conj(z);
        quad_part += z * prefix;
    }
    // deterministic part: sum_{s<=r} psi[r][s] Sigma[r][s]
    Complex trace{0.0, 0.0};
    for (int m = n - 1; m >= 0; --m) {
        const double rho = fbm_lag_cov(params.h, dt, m);
        trace += static_cast<double>(n - m) * std::exp(-std::conj(params.gamma()) * (m * dt)) * rho;
    }
    return quad_part - trace;
}

std::vector<double> expected_abs2(const ModelParams& params, const GridSpec& grid) {
    const int n = grid.n_steps;
    const double dt = grid.dt();
    const Complex g = params.gamma();
    const Complex e = std::exp(-g * dt);
    const double e2 = std::exp(-2.0 * params.lambda * dt);

    // E|Z_{k+1}|^2 = e^{-2 lambda dt} E|Z_k|^2 + a rho(0) + 2 a Re(e^{-gbar dt} conj(w_k)),
    // w_k = E[conj(Z_k) dzeta_k]/sqrt(a) = sum_{m=1}^{k} e^{-gbar (m-1) dt} rho(m).
    std::vector<double> rho(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m)
        rho[static_cast<std::size_t>(m)] = fbm_lag_cov(params.h, dt, m);

    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = std::norm(params.z0);
    Complex w{0.0, 0.0}; // w_k as above
    const Complex ebar = std::conj(e);
    for (int k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k) + 1] =
            e2 * out[static_cast<std::size_t>(k)] + params.a * rho[0] +
            2.0 * params.a * std::real(ebar * std::conj(w));
        // w_{k+1} = sum_{m=1}^{k+1} e^{-gbar (m-1) dt} rho(m) = rho(1) + e^{-gbar dt}(w_k shifted)
        Complex next{0.0, 0.0};
        for (int m = 1; m <= k + 1; ++m)
            next += std::exp(-std::conj(g) * ((m - 1) * dt)) * rho[static_cast<std::size_t>(m)];
        w = next;
    }
    return out;
}

} // namespace cfou
