#pragma once

namespace tempscale {

/// Scale-time parameters (sigma, delta) approximating the limit kernel at (tau, c).
struct ScaleTimeMapping {
    double tau = 0.0;
    double c = 0.0;
    double sigma = 0.0;
    double delta = 0.0;

    // tau recovered from (sigma, delta).
    double round_trip_tau() const;
};

ScaleTimeMapping map_parameters(double tau, double c);

struct DerivativeWidths {
    // Distance between the inflection points.
    double d1 = 0.0;
    // Distance between the outer zero-crossings of the second derivative's derivative.
    double d2 = 0.0;
};

DerivativeWidths derivative_widths(double tau, double c);

/// d1/2 for n = 1, d2/(2 sqrt 3) for n = 2.
double duration_estimate(double tau_hat, double c, int n);

/// Zero-crossings of the scale-time kernel's derivatives.
struct ScaleTimeLandmarks {
    double t_max = 0.0;
    double t_inflect1 = 0.0;
    double t_inflect2 = 0.0;
    double t3_1 = 0.0;
    double t3_2 = 0.0;
    double t3_3 = 0.0;
};

ScaleTimeLandmarks scale_time_landmarks(double sigma, double delta);

}  // namespace tempscale
