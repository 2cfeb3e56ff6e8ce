#pragma once

#include <stdexcept>
#include <string>

namespace cfou {

// Hurst parameter. Sampling accepts any h in (0,1); the estimator and
// asymptotics entry points impose their own [1/2, 3/4) restriction.
struct HurstParam {
    double h;

    explicit HurstParam(double h_) : h(h_) {
        if (!(h > 0.0 && h < 1.0))
            throw std::invalid_argument("HurstParam: h must lie in (0,1), got " + std::to_string(h_));
    }

    // alpha_H = H(2H-1)
    double alpha() const noexcept { return h * (2.0 * h - 1.0); }
};

// Uniform grid t_k = k * dt, k = 0..n_steps, dt = t_max / n_steps.
struct GridSpec {
    double t_max;
    int n_steps;

    GridSpec(double t_max_, int n_steps_) : t_max(t_max_), n_steps(n_steps_) {
        if (n_steps < 1)
            throw std::invalid_argument("GridSpec: n_steps must be >= 1");
        if (!(t_max > 0.0))
            throw std::invalid_argument("GridSpec: t_max must be > 0");
    }

    double dt() const noexcept { return t_max / n_steps; }
    double time(int k) const noexcept { return k * dt(); }

    friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
        return a.t_max == b.t_max && a.n_steps == b.n_steps;
    }
};

} // namespace cfou
