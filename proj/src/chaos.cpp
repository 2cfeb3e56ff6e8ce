#include "cfou/chaos.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cfou/errors.hpp"

namespace cfou {

PhiGram::PhiGram(HurstParam h, const GridSpec& grid) : grid_(grid), h_(h) {
    const int n = grid.n_steps;
    sigma_.resize(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k <= j; ++k) {
            const double v = fbm_lag_cov(h, grid.dt(), j - k);
            sigma_(j, k) = v;
            sigma_(k, j) = v;
        }
    sigma_c_ = sigma_.cast<Complex>();
}

Complex phi_inner(const PhiGram& gram, const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
    if (f.size() != gram.size() || g.size() != gram.size())
        throw std::invalid_argument("phi_inner: vector size does not match the grid");
    return f.transpose() * gram.sigma_c() * g.conjugate();
}

namespace {

void check_same_grid(const GridKernel& f, const GridKernel& g, const char* where) {
    if (!f.gram || !g.gram) throw std::invalid_argument(std::string(where) + ": kernel without gram");
    if (!(f.gram->grid() == g.gram->grid()))
        throw std::invalid_argument(std::string(where) + ": kernels live on different grids");
}

void check_cap(const GridKernel& k, int cap, const char* where) {
    if (k.size() > cap)
        throw resource_error(std::string(where) + ": grid size " + std::to_string(k.size()) +
                             " exceeds cap " + std::to_string(cap));
}

} // namespace

Complex kernel_inner(const GridKernel& f, const GridKernel& g) {
    check_same_grid(f, g, "kernel_inner");
    const Eigen::MatrixXcd& s = f.gram->sigma_c();
    const Eigen::MatrixXcd a = s * g.values.conjugate() * s;
    return (f.values.array() * a.array()).sum();
}

double kernel_norm2(const GridKernel& f) {
    return std::real(kernel_inner(f, f));
}

Complex eval_I11(const GridKernel& kernel, const NoisePath& noise) {
    if (!kernel.gram || !(kernel.gram->grid() == noise.grid))
        throw std::invalid_argument("eval_I11: kernel and noise live on different grids");
    const int n = kernel.size();
    const Eigen::Map<const Eigen::VectorXcd> z(noise.increments.data(), n);
    // sum K[r][s] z_r conj(z_s) - sum K[r][s] Sigma[r][s]
    const Complex quadratic = z.transpose() * kernel.values * z.conjugate();
    const Complex trace = (kernel.values.array() * kernel.gram->sigma_c().array()).sum();
    return quadratic - trace;
}

GridKernel contract_01(const GridKernel& f, const GridKernel& g) {
    check_same_grid(f, g, "contract_01");
    return GridKernel{f.gram, f.values * f.gram->sigma_c() * g.values};
}

GridKernel contract_10(const GridKernel& f, const GridKernel& g) {
    check_same_grid(f, g, "contract_10");
    return GridKernel{f.gram, g.values * f.gram->sigma_c() * f.values};
}

Complex contract_11(const GridKernel& f, const GridKernel& g) {
    check_same_grid(f, g, "contract_11");
    // full pairing: sum f[u][v] g[v'][u'] Sigma[u][u'] Sigma[v][v']  (bilinear, no conjugation)
    const Eigen::MatrixXcd& s = f.gram->sigma_c();
    return ((s * f.values * s).array() * g.values.transpose().array()).sum();
}

double TensorKernel::norm() const {
    return std::sqrt(kernel_norm2(f) * kernel_norm2(g));
}

ContractionResult contract(const GridKernel& f, const GridKernel& g, int i, int j) {
    if (i == 0 && j == 0) {
        check_same_grid(f, g, "contract");
        return TensorKernel{f, g};
    }
    if (i == 0 && j == 1) return contract_01(f, g);
    if (i == 1 && j == 0) return contract_10(f, g);
    if (i == 1 && j == 1) return contract_11(f, g);
    throw std::invalid_argument("contract: (i,j)=(" + std::to_string(i) + "," + std::to_string(j) +
                                ") is not valid for (1,1) kernels");
}

namespace {

// Both contraction-route expressions for the fourth-moment gap of a (1,1)
// integral. Route A groups the f(x)f norms with the psi_1 = f(x)h combination,
// route B the f(x)h norms with phi_1 = f(x)f + f(x)f.
struct GapRoutes {
    double route_a;
    double route_b;
};

GapRoutes gap_routes(const GridKernel& f) {
    const GridKernel h = f.adjoint();
    const GridKernel a01 = contract_01(f, f);            // F Sigma F
    const GridKernel a10 = contract_10(f, f);            // F Sigma F (equal for f=f)
    const GridKernel b = contract_01(f, h);              // F Sigma F^H
    const GridKernel c = contract_10(f, h);              // F^H Sigma F
    const GridKernel psi1{f.gram, b.values + c.values};
    const GridKernel phi1{f.gram, a01.values + a10.values};

    GapRoutes r;
    r.route_a = kernel_norm2(a01) + kernel_norm2(a10) + kernel_norm2(psi1);
    r.route_b = kernel_norm2(b) + kernel_norm2(c) + kernel_norm2(phi1);
    return r;
}

} // namespace

ChaosMoments chaos_moments_exact(const GridKernel& kernel, int cap) {
    check_cap(kernel, cap, "chaos_moments_exact");
    ChaosMoments m;
    m.m2_abs = kernel_norm2(kernel);
    m.m2 = kernel_inner(kernel, kernel.adjoint());
    const GapRoutes r = gap_routes(kernel);
    m.m4_abs = r.route_b + 2.0 * m.m2_abs * m.m2_abs + std::norm(m.m2);
    return m;
}

double fourth_moment_gap(const GridKernel& kernel, int cap) {
    check_cap(kernel, cap, "fourth_moment_gap");
    const ChaosMoments m = chaos_moments_exact(kernel, cap);
    const double from_moments = m.m4_abs - 2.0 * m.m2_abs * m.m2_abs - std::norm(m.m2);
    const double direct = gap_routes(kernel).route_a;
    const double scale = std::max({std::abs(from_moments), std::abs(direct), 1e-300});
    if (std::abs(from_moments - direct) > 1e-9 * scale)
        throw numerical_error("fourth_moment_gap: contraction routes disagree (" +
                                  std::to_string(from_moments) + " vs " + std::to_string(direct) + ")",
                              std::abs(from_moments - direct) / scale);
    return from_moments;
}

MalliavinVariances malliavin_variances(const GridKernel& kernel, int cap) {
    check_cap(kernel, cap, "malliavin_variances");
    const GridKernel h = kernel.adjoint();
    // m = n = 1: eta_1 = f (x)_{1,0} h, xi_1 = h (x)_{1,0} f, nu_1 = f (x)_{1,0} f.
    MalliavinVariances v;
    v.var_d = kernel_norm2(contract_10(kernel, h));
    v.var_dbar = kernel_norm2(contract_10(h, kernel));
    v.var_cross = kernel_norm2(contract_10(kernel, kernel));
    return v;
}

} // namespace cfou
