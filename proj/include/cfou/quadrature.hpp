#pragma once

#include <complex>
#include <functional>

namespace cfou::quad {

struct RealResult {
    double value = 0.0;
    double est_error = 0.0;
    long evaluations = 0;
};

struct ComplexResult {
    std::complex<double> value{0.0, 0.0};
    double est_error = 0.0;
    long evaluations = 0;
};

// tanh-sinh on a finite interval [a,b]. Integrands may be singular at the
// endpoints (integrable singularities).
RealResult integrate(const std::function<double(double)>& f, double a, double b,
                     double tol = 1e-9);

// tanh-sinh over [0,inf) through the map x = u/(1-u) on (0,1).
RealResult integrate_0inf(const std::function<double(double)>& f, double tol = 1e-9);

// Complex integrands, integrated as two real passes.
ComplexResult integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                          double b, double tol = 1e-9);
ComplexResult integrate_0inf_c(const std::function<std::complex<double>(double)>& f,
                               double tol = 1e-9);

} // namespace cfou::quad
