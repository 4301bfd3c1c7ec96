#pragma once

#include <functional>
#include <vector>

namespace tempscale::quad {

// Adaptive Gauss-Kronrod integral over [a, b]; b may be +infinity.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

// Same, split at the given breakpoints (kinks of |f|, zero crossings).
double integrate_piecewise(const std::function<double(double)>& f, double a, double b,
                           std::vector<double> breakpoints, double rel_tol = 1e-13);

}  // namespace tempscale::quad
