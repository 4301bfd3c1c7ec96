#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "tempscale/normalization.hpp"

namespace tempscale {

struct GammaPeak {
    double mu = 1.0;
    int K0 = 4;
};
struct GammaOnsetRamp {
    double mu = 1.0;
    int K0 = 4;
};
struct Sine {
    double omega0 = 1.0;
    double phase = 0.0;
};
struct Chirp {
    double a = 200.0;
    double b = 1000.0;
};
/// Non-causal Gaussian peak centred at `center`.
struct GaussianPeak {
    double tau0 = 1.0;
    double center = 0.0;
};
/// Primitive of a Gaussian peak (error-function step).
struct GaussianRamp {
    double tau0 = 1.0;
    double center = 0.0;
};
/// A discrete delta run through a logarithmic cascade ending at tau0.
struct LimitKernelPeak {
    double tau0 = 1.0;
    double c = 1.4142135623730951;
    // Variance of the finest cascade stage.
    double tau_floor = 1e-4;
};

using ModelSignal = std::variant<GammaPeak, GammaOnsetRamp, Sine, Chirp, GaussianPeak, GaussianRamp, LimitKernelPeak>;

/// Samples t = i dt for i in [0, duration / dt).
std::vector<double> generate(const ModelSignal& model, double dt, double duration);

// Closed-form scale-space signatures as functions of a continuous scale K.
double signature_peak_uniform(double K0, double mu, double gamma, double K);
double signature_peak_uniform_lp(double K0, double mu, double p, double K);
double signature_ramp_uniform(double K0, double mu, const NormalizationSpec& spec, double K);
double signature_sine_uniform(double omega0, double mu, int n, double gamma, double K);
double sine_uniform_argmax(double omega0, double mu, int n, double gamma);
double signature_sine_limit(double omega0, double tau, double c, int n, double gamma, int truncation_stages);
/// Magnitude of the temporal part (mu^2 K)^gamma U^2 U_tt of the det-Hessian at the temporal maximum.
double signature_det_hessian_temporal(double K0, double mu, double gamma, double K);

/// K / (K + K0 - 1)
double postnorm_magnitude_uniform(double K0, double K);
/// sqrt(K) / (sqrt(2 pi) sqrt(K + K0 - 1))
double ramp_magnitude_stirling(double K0, double K);

/// Lp norm of the order-n derivative of U(t; mu, K) for continuous K, by quadrature.
double gamma_kernel_deriv_lp_norm(double mu, double K, int order, double p);

struct BaselineEstimate {
    // +infinity when the signature grows without bound.
    double tau_hat = 0.0;
    double max_magnitude = 0.0;
    // Magnitude after renormalizing to gamma = 1 at tau_hat.
    double postnorm_magnitude = 0.0;
};

BaselineEstimate gaussian_baseline_estimates(const ModelSignal& model, int n, double gamma);

struct Signature {
    std::vector<double> scale;
    std::vector<double> values;
    double argmax = 0.0;
    double max_value = 0.0;

    bool unimodal() const;
};

Signature tabulate_signature(const std::function<double(double)>& f, const std::vector<double>& grid);

struct ArgmaxResult {
    double scale = 0.0;
    double value = 0.0;
};

struct ArgmaxOptions {
    int grid = 64;
    int max_expansions = 12;
    // Expansion never moves the lower end below this.
    double lower_limit = -1e300;
    // Search in log(scale) instead of scale.
    bool log_scale = false;
};

/// Maximizes f over [lo, hi] with Brent's method after grid bracketing.
ArgmaxResult continuous_argmax(const std::function<double(double)>& f, double lo, double hi,
                               const ArgmaxOptions& options = {});

}  // namespace tempscale
