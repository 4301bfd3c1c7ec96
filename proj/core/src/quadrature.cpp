#include "tempscale/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tempscale::quad {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol, &err);
}

double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints, double rel_tol) {
    std::sort(breakpoints.begin(), breakpoints.end());
    double total = 0.0;
    double lo = a;
    for (double p : breakpoints) {
        if (p <= lo || p >= b) continue;
        total += integrate(f, lo, p, rel_tol);
        lo = p;
    }
    total += integrate(f, lo, b, rel_tol);
    return total;
}

}  // namespace tempscale::quad
