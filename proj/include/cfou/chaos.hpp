#pragma once

#include <Eigen/Dense>

#include <complex>
#include <memory>
#include <variant>

#include "cfou/fbm.hpp"
#include "cfou/grid.hpp"

namespace cfou {

using Complex = std::complex<double>;

// Increment covariance matrix Sigma[j][k] = rho(j,k) of the grid, i.e. the
// discretized phi-inner product of indicator cells. Immutable once built;
// shareable across threads.
class PhiGram {
public:
    PhiGram(HurstParam h, const GridSpec& grid);

    const GridSpec& grid() const noexcept { return grid_; }
    HurstParam hurst() const noexcept { return h_; }
    int size() const noexcept { return grid_.n_steps; }
    const Eigen::MatrixXd& sigma() const noexcept { return sigma_; }
    const Eigen::MatrixXcd& sigma_c() const noexcept { return sigma_c_; }

private:
    GridSpec grid_;
    HurstParam h_;
    Eigen::MatrixXd sigma_;
    Eigen::MatrixXcd sigma_c_;
};

using PhiGramPtr = std::shared_ptr<const PhiGram>;

// A (1,1) kernel tabulated on the grid: row index is the zeta-argument,
// column index the conjugate-zeta-argument.
struct GridKernel {
    PhiGramPtr gram;
    Eigen::MatrixXcd values;

    int size() const noexcept { return static_cast<int>(values.rows()); }
    // Kernel of the conjugate integral: h[r][s] = conj(k[s][r]).
    GridKernel adjoint() const { return GridKernel{gram, values.adjoint()}; }
};

struct ChaosMoments {
    double m2_abs;  // E|F|^2
    Complex m2;     // E F^2
    double m4_abs;  // E|F|^4
};

// Lazy tensor product f (x)_{0,0} g; norm is exact without materializing.
struct TensorKernel {
    GridKernel f;
    GridKernel g;

    double norm() const;
    Complex at(int t1, int t2, int s1, int s2) const {
        return f.values(t1, s1) * g.values(t2, s2);
    }
};

using ContractionResult = std::variant<GridKernel, Complex, TensorKernel>;

// Hermitian pairing on the grid, conjugate-linear in the second argument:
//   <f,g> = sum_{j,k} f[j] conj(g[k]) Sigma[j][k].
Complex phi_inner(const PhiGram& gram, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

// Same pairing on two-argument kernels (H tensor H norm/inner product).
Complex kernel_inner(const GridKernel& f, const GridKernel& g);
double kernel_norm2(const GridKernel& f);

// Wick-ordered discrete (1,1) integral:
//   sum_{r,s} K[r][s] (dz_r conj(dz_s) - Sigma[r][s]).
// The Sigma subtraction makes the value mean-zero (Skorokhod reading).
Complex eval_I11(const GridKernel& kernel, const NoisePath& noise);

// Contraction of (1,1) kernels through Sigma.
//   (0,1): pairs the zbar-slot of f with the z-slot of g -> F Sigma G
//   (1,0): pairs the z-slot of f with the zbar-slot of g -> G Sigma F
//   (1,1): full pairing, scalar
//   (0,0): tensor product (lazy)
ContractionResult contract(const GridKernel& f, const GridKernel& g, int i, int j);
GridKernel contract_01(const GridKernel& f, const GridKernel& g);
GridKernel contract_10(const GridKernel& f, const GridKernel& g);
Complex contract_11(const GridKernel& f, const GridKernel& g);

// Exact second and fourth moments of I_{1,1}(kernel) from the grid algebra.
// E|F|^2 is the Ito isometry norm, E F^2 the <f,h> pairing, and E|F|^4 is
// assembled from the contraction-norm identity for (1,1) chaos.
ChaosMoments chaos_moments_exact(const GridKernel& kernel, int cap = 512);

// Nonnegative gap E|F|^4 - 2(E|F|^2)^2 - |E F^2|^2 computed through two
// contraction routes; throws numerical_error if they disagree beyond 1e-9
// relative. Returns the moments-route value.
double fourth_moment_gap(const GridKernel& kernel, int cap = 512);

// (Var ||DF||^2, Var ||D conj(F)||^2, Var <DF, D conj(F)>) for F = I_{1,1}(kernel).
struct MalliavinVariances {
    double var_d;
    double var_dbar;
    double var_cross;
};
MalliavinVariances malliavin_variances(const GridKernel& kernel, int cap = 512);

} // namespace cfou
