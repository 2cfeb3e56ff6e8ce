#include "cfou/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace cfou::quad {

namespace {

boost::math::quadrature::tanh_sinh<double>& integrator() {
    // tanh_sinh caches abscissas lazily; instances are not safe to share
    // across threads, so keep one per thread.
    static thread_local boost::math::quadrature::tanh_sinh<double> q(15);
    return q;
}

} // namespace

RealResult integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    RealResult r;
    long evals = 0;
    auto counted = [&](double x) {
        ++evals;
        return f(x);
    };
    double err = 0.0;
    r.value = integrator().integrate(counted, a, b, tol, &err);
    r.est_error = err * std::abs(r.value);
    r.evaluations = evals;
    return r;
}

RealResult integrate_0inf(const std::function<double(double)>& f, double tol) {
    RealResult r;
    long evals = 0;
    // x = u/(1-u); dx = du/(1-u)^2. The two-argument form keeps 1-u exact
    // near the right endpoint.
    auto mapped = [&](double u, double uc) {
        ++evals;
        const double x = u / uc;
        const double jac = 1.0 / (uc * uc);
        const double v = f(x);
        return v == 0.0 ? 0.0 : v * jac;
    };
    double err = 0.0;
    r.value = integrator().integrate(mapped, 0.0, 1.0, tol, &err);
    r.est_error = err * std::abs(r.value);
    r.evaluations = evals;
    return r;
}

ComplexResult integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                          double b, double tol) {
    const RealResult re = integrate([&](double x) { return f(x).real(); }, a, b, tol);
    const RealResult im = integrate([&](double x) { return f(x).imag(); }, a, b, tol);
    ComplexResult r;
    r.value = {re.value, im.value};
    r.est_error = std::hypot(re.est_error, im.est_error);
    r.evaluations = re.evaluations + im.evaluations;
    return r;
}

ComplexResult integrate_0inf_c(const std::function<std::complex<double>(double)>& f, double tol) {
    const RealResult re = integrate_0inf([&](double x) { return f(x).real(); }, tol);
    const RealResult im = integrate_0inf([&](double x) { return f(x).imag(); }, tol);
    ComplexResult r;
    r.value = {re.value, im.value};
    r.est_error = std::hypot(re.est_error, im.est_error);
    r.evaluations = re.evaluations + im.evaluations;
    return r;
}

} // namespace cfou::quad
