#include "tempscale/scaletime.hpp"

#include <cmath>

#include "tempscale/errors.hpp"
#include "tempscale/kernels.hpp"

namespace tempscale {

double ScaleTimeMapping::round_trip_tau() const { return scale_time_variance(sigma, delta); }

ScaleTimeMapping map_parameters(double tau, double c) {
    if (!(c > 1.0) || !std::isfinite(c)) throw DomainError("map_parameters: c must be > 1");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("map_parameters: tau must be > 0");
    ScaleTimeMapping m;
    m.tau = tau;
    m.c = c;
    m.sigma = std::sqrt(std::log(2.0 * c / (c + 1.0)));
    m.delta = (c + 1.0) * (c + 1.0) * std::sqrt(tau) / (2.0 * std::sqrt(2.0) * std::sqrt((c - 1.0) * c * c * c));
    return m;
}

DerivativeWidths derivative_widths(double tau, double c) {
    const auto m = map_parameters(tau, c);
    const double s = m.sigma;
    DerivativeWidths w;
    w.d1 = 2.0 * m.delta * std::exp(-s * s / 2.0) * std::sinh(s * std::sqrt(s * s + 4.0) / 2.0);
    w.d2 = 2.0 * m.delta * std::exp(-s * s) * std::sinh(s * std::sqrt(s * s + 3.0));
    return w;
}

double duration_estimate(double tau_hat, double c, int n) {
    const auto w = derivative_widths(tau_hat, c);
    if (n == 1) return w.d1 / 2.0;
    if (n == 2) return w.d2 / (2.0 * std::sqrt(3.0));
    throw DomainError("duration_estimate: order must be 1 or 2");
}

ScaleTimeLandmarks scale_time_landmarks(double sigma, double delta) {
    if (!(sigma > 0.0) || !(delta > 0.0)) throw DomainError("scale_time_landmarks: sigma, delta must be > 0");
    const double s = sigma;
    const double r4 = std::sqrt(s * s + 4.0);
    const double r3 = std::sqrt(s * s + 3.0);
    ScaleTimeLandmarks l;
    l.t_max = delta;
    l.t_inflect1 = delta * std::exp(-s * (r4 + s) / 2.0);
    l.t_inflect2 = delta * std::exp(s * (r4 - s) / 2.0);
    l.t3_1 = delta * std::exp(-s * (r3 + s));
    l.t3_2 = delta * std::exp(-s * s);
    l.t3_3 = delta * std::exp(s * (r3 - s));
    return l;
}

}  // namespace tempscale
