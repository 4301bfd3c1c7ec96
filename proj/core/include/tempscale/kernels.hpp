#pragma once

#include <complex>
#include <cstddef>
#include <variant>
#include <vector>

namespace tempscale {

struct NormalizationSpec;

/// Non-causal Gaussian with variance tau, shifted by delta.
struct GaussianKernel {
    double tau = 1.0;
    double delta = 0.0;
};

/// K truncated exponentials with equal time constant mu.
struct GammaCascadeKernel {
    double mu = 1.0;
    int K = 1;
};

/// Truncated product form of the scale-invariant limit kernel.
struct LimitKernel {
    double tau = 1.0;
    double c = 2.0;
    int truncation_stages = 32;
};

/// Koenderink's scale-time kernel (log-remapped Gaussian).
struct ScaleTimeKernel {
    double sigma = 0.5;
    double delta = 1.0;
};

using KernelSpec = std::variant<GaussianKernel, GammaCascadeKernel, LimitKernel, ScaleTimeKernel>;

void validate(const KernelSpec& spec);
double kernel_variance(const KernelSpec& spec);

/// Samples of a kernel (or derivative) on a uniform grid; values are densities.
struct SampledKernel {
    double dt = 1.0;
    double origin = 0.0;
    std::vector<double> values;

    double time(std::size_t i) const { return origin + dt * static_cast<double>(i); }
    // Riemann sum, sum(values) * dt.
    double mass() const;
};

/// Samples the kernel's order-n derivative on [t_begin, t_end].
/// Limit kernels have no closed form in time; they are realized by a fine recursive cascade.
SampledKernel sample_kernel(const KernelSpec& spec, int order, double dt, double t_begin, double t_end);

double eval_gamma_kernel(double t, double mu, int K, int order);
// Continuous extension in K, used by signature maximization.
double eval_gamma_kernel_real(double t, double mu, double K, int order);
double gamma_kernel_deriv_l1_norm(double mu, int K, int order);

double eval_gaussian_kernel(double t, double tau, double delta, int order);

struct FourierValue {
    double magnitude = 1.0;
    double argument = 0.0;
    std::complex<double> value() const { return std::polar(magnitude, argument); }
};

FourierValue limit_kernel_fourier(double omega, double tau, double c, int truncation_stages);
// Smallest stage count whose first dropped factor is below 1e-12 at omega_max.
int default_truncation_stages(double tau, double c, double omega_max);

double eval_scale_time_kernel(double t, double sigma, double delta, int order);
double scale_time_l1_norm(double sigma, double delta, int order);
double scale_time_variance(double sigma, double delta);
double scale_time_mean(double sigma, double delta);
double scale_time_scaled_normalized_deriv(double t, double sigma, double delta, int order,
                                          const NormalizationSpec& policy);

}  // namespace tempscale
