#include "tempscale/normalization.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "tempscale/errors.hpp"
#include "tempscale/quadrature.hpp"

namespace tempscale {

double gamma_to_p(int n, double gamma) {
    if (n < 1) throw DomainError("gamma_to_p: n must be >= 1");
    const double den = 1.0 + n * (1.0 - gamma);
    if (!(den > 0.0) || !std::isfinite(den)) throw DomainError("gamma_to_p: gamma gives p <= 0");
    return 1.0 / den;
}

double p_to_gamma(int n, double p) {
    if (n < 1) throw DomainError("p_to_gamma: n must be >= 1");
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p_to_gamma: p must be > 0");
    return 1.0 - (1.0 / p - 1.0) / n;
}

double NormalizationSpec::gamma() const { return mode == NormMode::Variance ? value : p_to_gamma(order, value); }

double NormalizationSpec::p() const { return mode == NormMode::Lp ? value : gamma_to_p(order, value); }

double variance_prefactor(double tau, int n, double gamma) {
    if (!(tau > 0.0)) throw DomainError("variance_prefactor: tau must be > 0");
    return std::pow(tau, n * gamma / 2.0);
}

namespace {

double compute_reference_norm(int n, double p) {
    auto f = [n, p](double x) { return std::pow(std::abs(eval_gaussian_kernel(x, 1.0, 0.0, n)), p); };
    std::vector<double> breaks;
    if (n == 2) breaks.push_back(1.0);
    const double half = quad::integrate_piecewise(f, 0.0, 60.0, breaks, 1e-14);
    return std::pow(2.0 * half, 1.0 / p);
}

}  // namespace

double reference_gaussian_norm(int n, double p) {
    if (n != 1 && n != 2) throw DomainError("reference_gaussian_norm: n must be 1 or 2");
    if (!(p > 0.0) || p > 1.0) throw DomainError("reference_gaussian_norm: p must be in (0, 1]");
    static std::mutex mutex;
    static std::map<std::pair<int, double>, double> cache;
    const std::lock_guard<std::mutex> lock(mutex);
    const auto key = std::make_pair(n, p);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const double v = compute_reference_norm(n, p);
    cache.emplace(key, v);
    return v;
}

double gaussian_deriv_lp_norm(int n, double p, double tau) {
    if (!(tau > 0.0)) throw DomainError("gaussian_deriv_lp_norm: tau must be > 0");
    return reference_gaussian_norm(n, p) * std::pow(tau, -(n + 1) / 2.0 + 1.0 / (2.0 * p));
}

double lp_norm(const SampledKernel& kernel, double p) {
    if (!(p > 0.0)) throw DomainError("lp_norm: p must be > 0");
    double s = 0.0;
    for (double v : kernel.values) s += std::pow(std::abs(v), p);
    return std::pow(s * kernel.dt, 1.0 / p);
}

double lp_prefactor(const SampledKernel& derivative_kernel, int n, double p) {
    const double norm = lp_norm(derivative_kernel, p);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DegenerateKernelError("lp_prefactor: kernel has zero or non-finite norm");
    return reference_gaussian_norm(n, p) / norm;
}

SampledKernel derivative_kernel(const SampledKernel& h, int n) {
    if (n < 0 || n > 2) throw DomainError("derivative_kernel: order must be in [0, 2]");
    SampledKernel out{h.dt, h.origin, h.values};
    for (int m = 0; m < n; ++m) {
        out.values.push_back(0.0);
        for (std::size_t i = out.values.size(); i-- > 1;) out.values[i] = (out.values[i] - out.values[i - 1]) / h.dt;
        out.values[0] /= h.dt;
    }
    return out;
}

SampledKernel level_derivative_kernel(const TemporalScaleSpace& space, std::size_t level, int n) {
    if (level >= space.levels() && level >= space.tau.size()) throw DomainError("level_derivative_kernel: level out of range");
    if (space.family == SmoothingFamily::Gaussian) {
        auto g = sampled_gaussian(space.tau[level], space.dt);
        const double R = static_cast<double>(g.size() / 2);
        for (double& v : g) v /= space.dt;
        return derivative_kernel(SampledKernel{space.dt, -R * space.dt, std::move(g)}, n);
    }
    return derivative_kernel(impulse_response(space.ladder, level, space.dt, space.discretization), n);
}

std::vector<double> level_prefactors(const TemporalScaleSpace& space, const NormalizationSpec& spec) {
    const std::size_t levels = space.tau.size();
    std::vector<double> out(levels, 1.0);
    for (std::size_t k = 0; k < levels; ++k) {
        if (spec.mode == NormMode::Variance) {
            out[k] = variance_prefactor(space.tau[k], spec.order, spec.value);
        } else {
            out[k] = lp_prefactor(level_derivative_kernel(space, k, spec.order), spec.order, spec.value);
        }
    }
    return out;
}

NormalizedPlanes normalize_plane(const TemporalScaleSpace& space, const NormalizationSpec& spec) {
    if (spec.order != 1 && spec.order != 2) throw UsageError("normalize_plane: order must be 1 or 2");
    const auto& plane = spec.order == 1 ? space.d1 : space.d2;
    if (!plane) throw UsageError("normalize_plane: derivative plane of order " + std::to_string(spec.order) + " missing");
    NormalizedPlanes out{spec, level_prefactors(space, spec), *plane};
    for (std::size_t k = 0; k < out.values.levels(); ++k)
        for (double& v : out.values.row(k)) v *= out.prefactor[k];
    return out;
}

}  // namespace tempscale
