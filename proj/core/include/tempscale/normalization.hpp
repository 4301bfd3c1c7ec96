#pragma once

#include <vector>

#include "tempscale/kernels.hpp"
#include "tempscale/scalespace.hpp"

namespace tempscale {

enum class NormMode { Variance, Lp };

/// Scale normalization of an order-n derivative: variance-based (gamma) or Lp (p).
struct NormalizationSpec {
    NormMode mode = NormMode::Variance;
    // gamma for Variance, p for Lp.
    double value = 1.0;
    int order = 1;

    static NormalizationSpec variance(int n, double gamma) { return {NormMode::Variance, gamma, n}; }
    static NormalizationSpec lp(int n, double p) { return {NormMode::Lp, p, n}; }

    double gamma() const;
    double p() const;
};

double gamma_to_p(int n, double gamma);
double p_to_gamma(int n, double p);

double variance_prefactor(double tau, int n, double gamma);

/// G_{n,p}: Lp norm of the n-th Gaussian derivative at tau = 1 (cached after first use).
double reference_gaussian_norm(int n, double p);
/// Lp norm of the n-th Gaussian derivative at variance tau.
double gaussian_deriv_lp_norm(int n, double p, double tau);

/// (sum |v_i|^p dt)^{1/p}
double lp_norm(const SampledKernel& kernel, double p);
double lp_prefactor(const SampledKernel& derivative_kernel, int n, double p);

/// Order-n backward-difference stencil applied to a density with zero past.
SampledKernel derivative_kernel(const SampledKernel& smoothing_kernel, int n);
/// Effective order-n derivative kernel of one level of a scale space.
SampledKernel level_derivative_kernel(const TemporalScaleSpace& space, std::size_t level, int n);

std::vector<double> level_prefactors(const TemporalScaleSpace& space, const NormalizationSpec& spec);

struct NormalizedPlanes {
    NormalizationSpec spec;
    std::vector<double> prefactor;
    Plane values;
};

NormalizedPlanes normalize_plane(const TemporalScaleSpace& space, const NormalizationSpec& spec);

}  // namespace tempscale
