#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cfou/chaos.hpp"
#include "cfou/fbm.hpp"
#include "cfou/grid.hpp"

namespace cfou {

// Parameters of dZ_t = -gamma Z_t dt + sqrt(a) dzeta_t with gamma = lambda - i omega.
struct ModelParams {
    double lambda;
    double omega;
    double a;
    HurstParam h;
    Complex z0{0.0, 0.0};

    ModelParams(double lambda_, double omega_, double a_, HurstParam h_, Complex z0_ = {})
        : lambda(lambda_), omega(omega_), a(a_), h(h_), z0(z0_) {
        if (!(lambda > 0.0)) throw std::invalid_argument("ModelParams: lambda must be > 0");
        if (a < 0.0) throw std::invalid_argument("ModelParams: a must be >= 0");
    }

    Complex gamma() const noexcept { return {lambda, -omega}; }
};

struct Trajectory {
    GridSpec grid;
    std::vector<Complex> z; // n_steps + 1 values, z[0] = z0
    ModelParams params;
    std::uint64_t seed;
};

struct EstimateResult {
    Complex gamma_hat;            // Skorokhod-corrected estimator
    Complex gamma_hat_pathwise;   // uncorrected (Young/Riemann) estimator
    double denom;                 // (1/T) integral of |Z|^2 (trapezoid)
    Complex numerator_correction; // deterministic Wick trace C_T
    double t_max;
    int n_steps;
};

// Exact-exponential propagation Z_{k+1} = e^{-gamma dt} Z_k + sqrt(a) dzeta_k.
// Requires h in [1/2, 3/4).
Trajectory simulate(const ModelParams& params, const GridSpec& grid, std::uint64_t seed);

// Deterministic Wick trace
//   C_T = a sum_{k} sum_{j<k} e^{-conj(gamma) (t_k - t_{j+1})} rho(j,k),
// the exact value of E[sqrt(a) sum_k conj(Z_k) dzeta_k] for the propagation
// scheme above (the noise weight in Z_k decays from t_{j+1}).
Complex wick_correction(const ModelParams& params, const GridSpec& grid);

// Least squares estimator. The pathwise numerator is sum conj(Z_k) dZ_k; the
// Skorokhod numerator subtracts C_T. For h = 1/2 both coincide (C_T = 0).
EstimateResult estimate(const Trajectory& traj);
EstimateResult estimate(const Trajectory& traj, Complex precomputed_wick);

// Stationary autocovariance E[Y_{t+s} conj(Y_t)] of the stationary solution,
// evaluated by quadrature of a alpha_H int int e^{-gamma(v1+s)} e^{-conj(gamma) v2}
// |v1-v2|^{2H-2} (shear reduction of the double integral). Requires h > 1/2.
Complex stationary_autocov(const ModelParams& params, double s, double tol = 1e-9);

// psi_T and h_T tabulated on the grid (left-endpoint):
//   psi[r][s] = e^{-conj(gamma)(t_r - t_s)} 1{s <= r},  h[r][s] = conj(psi[s][r]).
GridKernel psi_kernel(const ModelParams& params, const PhiGramPtr& gram);
GridKernel h_kernel(const ModelParams& params, const PhiGramPtr& gram);
GridKernel psi_kernel(const ModelParams& params, const GridSpec& grid);
GridKernel h_kernel(const ModelParams& params, const GridSpec& grid);

// O(n) evaluation of eval_I11(psi_kernel(params, grid), noise), using the
// exponential structure of psi. Bit-compatible up to roundoff with the dense
// route; used by the Monte Carlo harness at grid sizes where the dense kernel
// is out of reach.
Complex eval_psi_integral(const ModelParams& params, const GridSpec& grid,
                          const NoisePath& noise);

// Exact E|Z_k|^2 sequence for the discrete scheme (O(n) recursion); exposed
// for the Skorokhod/pathwise bridge diagnostics.
std::vector<double> expected_abs2(const ModelParams& params, const GridSpec& grid);

} // namespace cfou
