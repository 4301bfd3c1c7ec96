#include "tempscale/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tempscale/errors.hpp"
#include "tempscale/normalization.hpp"

namespace tempscale {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

void require_order(int order, int max_order) {
    if (order < 0 || order > max_order)
        throw DomainError("derivative order must be in [0, " + std::to_string(max_order) + "]");
}

// c * t^p * exp(-t/mu) * scale, with p possibly negative, evaluated in log space.
double gamma_term(double coef, double p, double t, double mu, double log_scale) {
    if (coef == 0.0) return 0.0;
    if (t == 0.0) {
        if (p > 0.0) return 0.0;
        if (p == 0.0) return coef * std::exp(log_scale);
        return std::copysign(HUGE_VAL, coef);
    }
    const double lg = std::log(std::abs(coef)) + p * std::log(t) - t / mu + log_scale;
    return std::copysign(std::exp(lg), coef);
}

double log_sum_exp(double a, double b) {
    const double m = std::max(a, b);
    if (m == -HUGE_VAL) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace

void validate(const KernelSpec& spec) {
    std::visit(
        [](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GaussianKernel>) {
                if (!(k.tau > 0.0) || !std::isfinite(k.tau)) throw DomainError("Gaussian: tau must be > 0");
                if (!(k.delta >= 0.0) || !std::isfinite(k.delta)) throw DomainError("Gaussian: delta must be >= 0");
            } else if constexpr (std::is_same_v<T, GammaCascadeKernel>) {
                if (!(k.mu > 0.0) || !std::isfinite(k.mu)) throw DomainError("GammaCascade: mu must be > 0");
                if (k.K < 1) throw DomainError("GammaCascade: K must be >= 1");
            } else if constexpr (std::is_same_v<T, LimitKernel>) {
                if (!(k.tau > 0.0) || !std::isfinite(k.tau)) throw DomainError("LimitKernel: tau must be > 0");
                if (!(k.c > 1.0) || !std::isfinite(k.c)) throw DomainError("LimitKernel: c must be > 1");
                if (k.truncation_stages < 1) throw DomainError("LimitKernel: truncation_stages must be >= 1");
            } else {
                if (!(k.sigma > 0.0) || !std::isfinite(k.sigma)) throw DomainError("ScaleTime: sigma must be > 0");
                if (!(k.delta > 0.0) || !std::isfinite(k.delta)) throw DomainError("ScaleTime: delta must be > 0");
            }
        },
        spec);
}

double kernel_variance(const KernelSpec& spec) {
    validate(spec);
    return std::visit(
        [](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, GaussianKernel>) {
                return k.tau;
            } else if constexpr (std::is_same_v<T, GammaCascadeKernel>) {
                return k.K * k.mu * k.mu;
            } else if constexpr (std::is_same_v<T, LimitKernel>) {
                return k.tau * (1.0 - std::pow(k.c, -2.0 * k.truncation_stages));
            } else {
                return scale_time_variance(k.sigma, k.delta);
            }
        },
        spec);
}

double SampledKernel::mass() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * dt;
}

double eval_gamma_kernel_real(double t, double mu, double K, int order) {
    require_finite(t, "t");
    require_finite(mu, "mu");
    require_finite(K, "K");
    if (!(mu > 0.0)) throw DomainError("eval_gamma_kernel: mu must be > 0");
    if (!(K >= 1.0)) throw DomainError("eval_gamma_kernel: K must be >= 1");
    require_order(order, 2);
    if (t < 0.0) return 0.0;
    const double log_scale = -K * std::log(mu) - std::lgamma(K);
    switch (order) {
        case 0:
            return gamma_term(1.0, K - 1.0, t, mu, log_scale);
        case 1:
            return gamma_term(K - 1.0, K - 2.0, t, mu, log_scale) +
                   gamma_term(-1.0 / mu, K - 1.0, t, mu, log_scale);
        default:
            return gamma_term((K - 1.0) * (K - 2.0), K - 3.0, t, mu, log_scale) +
                   gamma_term(-2.0 * (K - 1.0) / mu, K - 2.0, t, mu, log_scale) +
                   gamma_term(1.0 / (mu * mu), K - 1.0, t, mu, log_scale);
    }
}

double eval_gamma_kernel(double t, double mu, int K, int order) {
    return eval_gamma_kernel_real(t, mu, static_cast<double>(K), order);
}

double gamma_kernel_deriv_l1_norm(double mu, int K, int order) {
    require_finite(mu, "mu");
    if (!(mu > 0.0)) throw DomainError("gamma_kernel_deriv_l1_norm: mu must be > 0");
    if (order == 1) {
        if (K < 2) throw DomainError("gamma_kernel_deriv_l1_norm: order 1 needs K >= 2");
        const double k = K;
        // 2 e^{1-K} (K-1)^{K-1} / (mu Gamma(K))
        return 2.0 * std::exp(1.0 - k + (k - 1.0) * std::log(k - 1.0) - std::log(mu) - std::lgamma(k));
    }
    if (order == 2) {
        if (K < 3) throw DomainError("gamma_kernel_deriv_l1_norm: order 2 needs K >= 3");
        const double k = K;
        const double s = std::sqrt(k - 1.0);
        const double a = 2.0 * s + std::log(k + 2.0 * s) + k * std::log(k - s - 1.0);
        const double b = std::log(k - 2.0 * s) + k * std::log(k + s - 1.0);
        const double log_num = std::log(2.0) + (1.0 - k - s) + log_sum_exp(a, b);
        const double log_den = 2.0 * std::log(k - 2.0) + std::log(s) + 2.0 * std::log(mu) + std::lgamma(k);
        return std::exp(log_num - log_den);
    }
    throw DomainError("gamma_kernel_deriv_l1_norm: order must be 1 or 2");
}

double eval_gaussian_kernel(double t, double tau, double delta, int order) {
    require_finite(t, "t");
    require_finite(tau, "tau");
    require_finite(delta, "delta");
    if (!(tau > 0.0)) throw DomainError("eval_gaussian_kernel: tau must be > 0");
    require_order(order, 2);
    const double x = t - delta;
    const double g = std::exp(-x * x / (2.0 * tau)) / std::sqrt(2.0 * kPi * tau);
    if (order == 0) return g;
    if (order == 1) return -x / tau * g;
    return (x * x - tau) / (tau * tau) * g;
}

FourierValue limit_kernel_fourier(double omega, double tau, double c, int truncation_stages) {
    require_finite(omega, "omega");
    require_finite(tau, "tau");
    require_finite(c, "c");
    if (!(c > 1.0)) throw DomainError("limit_kernel_fourier: c must be > 1");
    if (!(tau > 0.0)) throw DomainError("limit_kernel_fourier: tau must be > 0");
    if (truncation_stages < 1) throw DomainError("limit_kernel_fourier: truncation_stages must be >= 1");
    const double base = std::sqrt(c * c - 1.0) * std::sqrt(tau) * omega;
    double log_mag = 0.0;
    double arg = 0.0;
    double ck = 1.0;
    for (int k = 1; k <= truncation_stages; ++k) {
        ck /= c;
        const double x = ck * base;
        log_mag -= 0.5 * std::log1p(x * x);
        arg -= std::atan(x);
    }
    return {std::exp(log_mag), arg};
}

int default_truncation_stages(double tau, double c, double omega_max) {
    if (!(c > 1.0)) throw DomainError("default_truncation_stages: c must be > 1");
    if (!(tau > 0.0)) throw DomainError("default_truncation_stages: tau must be > 0");
    const double x = (c * c - 1.0) * tau * omega_max * omega_max;
    if (!(x > 1e-12)) return 1;
    const int n = static_cast<int>(std::ceil(std::log(x / 1e-12) / (2.0 * std::log(c))));
    return std::max(1, n);
}

namespace {

// Polynomial P_n(u) with h^{(n)}(t) = h(t) P_n(log(t/delta)) / t^n, as coefficients in u.
std::array<double, 4> scale_time_poly(double sigma, int order) {
    std::array<double, 4> p{1.0, 0.0, 0.0, 0.0};
    const double s2 = sigma * sigma;
    for (int n = 0; n < order; ++n) {
        std::array<double, 4> q{};
        // P' - (u/s2 + n) P
        for (int j = 1; j < 4; ++j) q[j - 1] += j * p[j];
        for (int j = 0; j < 4; ++j) {
            q[j] -= n * p[j];
            if (j + 1 < 4) q[j + 1] -= p[j] / s2;
        }
        p = q;
    }
    return p;
}

}  // namespace

double eval_scale_time_kernel(double t, double sigma, double delta, int order) {
    require_finite(t, "t");
    require_finite(sigma, "sigma");
    require_finite(delta, "delta");
    if (!(sigma > 0.0)) throw DomainError("eval_scale_time_kernel: sigma must be > 0");
    if (!(delta > 0.0)) throw DomainError("eval_scale_time_kernel: delta must be > 0");
    require_order(order, 3);
    if (t <= 0.0) return 0.0;
    const double u = std::log(t / delta);
    const double h = std::exp(-u * u / (2.0 * sigma * sigma) - sigma * sigma / 2.0) /
                     (std::sqrt(2.0 * kPi) * sigma * delta);
    if (order == 0) return h;
    const auto p = scale_time_poly(sigma, order);
    const double poly = p[0] + u * (p[1] + u * (p[2] + u * p[3]));
    return h * poly / std::pow(t, order);
}

double scale_time_l1_norm(double sigma, double delta, int order) {
    if (!(sigma > 0.0)) throw DomainError("scale_time_l1_norm: sigma must be > 0");
    if (!(delta > 0.0)) throw DomainError("scale_time_l1_norm: delta must be > 0");
    const double r = std::sqrt(2.0 / kPi);
    if (order == 1) return r * std::exp(-sigma * sigma / 2.0) / (delta * sigma);
    if (order == 2) {
        const double w = std::sqrt(sigma * sigma + 4.0);
        const double a = sigma * w / 4.0;
        return r * std::exp(-sigma * sigma / 4.0 - 0.5) / (delta * delta * sigma * sigma) *
               (sigma * std::sinh(a) + w * std::cosh(a));
    }
    throw DomainError("scale_time_l1_norm: order must be 1 or 2");
}

double scale_time_variance(double sigma, double delta) {
    const double s2 = sigma * sigma;
    return delta * delta * std::exp(3.0 * s2) * std::expm1(s2);
}

double scale_time_mean(double sigma, double delta) { return delta * std::exp(1.5 * sigma * sigma); }

double scale_time_scaled_normalized_deriv(double t, double sigma, double delta, int order,
                                          const NormalizationSpec& policy) {
    if (order != 1 && order != 2) throw DomainError("scale_time_scaled_normalized_deriv: order must be 1 or 2");
    const double raw = eval_scale_time_kernel(t, sigma, delta, order);
    if (policy.mode == NormMode::Variance) {
        return variance_prefactor(scale_time_variance(sigma, delta), order, policy.value) * raw;
    }
    if (policy.value != 1.0)
        throw UnsupportedPolicyError("scale-time kernels support Lp normalization only for p = 1");
    return reference_gaussian_norm(order, 1.0) / scale_time_l1_norm(sigma, delta, order) * raw;
}

namespace {

SampledKernel sample_limit_kernel(const LimitKernel& k, int order, double dt, double t_begin, double t_end) {
    constexpr int kOversample = 16;
    const double h = dt / kOversample;
    const std::size_t n_out = static_cast<std::size_t>(std::floor((t_end - t_begin) / dt + 1e-9)) + 1;
    const double t_last = t_begin + dt * static_cast<double>(n_out - 1);
    const std::size_t n_fine = static_cast<std::size_t>(std::ceil(std::max(t_last, 0.0) / h)) + 3;
    std::vector<double> y(n_fine, 0.0);
    y[0] = 1.0 / h;
    const double root = std::sqrt(k.c * k.c - 1.0) * std::sqrt(k.tau);
    for (int s = k.truncation_stages; s >= 1; --s) {
        const double mu = std::pow(k.c, -s) * root;
        const double md = (std::sqrt(1.0 + 4.0 * mu * mu / (h * h)) - 1.0) / 2.0;
        const double a = 1.0 / (1.0 + md);
        double prev = 0.0;
        for (double& v : y) {
            prev = prev + a * (v - prev);
            v = prev;
        }
    }
    for (int n = 0; n < order; ++n) {
        for (std::size_t i = y.size(); i-- > 1;) y[i] = (y[i] - y[i - 1]) / h;
        y[0] = y[0] / h;
    }
    SampledKernel out{dt, t_begin, std::vector<double>(n_out, 0.0)};
    for (std::size_t i = 0; i < n_out; ++i) {
        const double t = out.time(i);
        if (t < 0.0) continue;
        const double pos = t / h;
        const std::size_t j = static_cast<std::size_t>(pos);
        const double f = pos - static_cast<double>(j);
        const double a = y[std::min(j, n_fine - 1)];
        const double b = y[std::min(j + 1, n_fine - 1)];
        out.values[i] = a + f * (b - a);
    }
    return out;
}

}  // namespace

SampledKernel sample_kernel(const KernelSpec& spec, int order, double dt, double t_begin, double t_end) {
    validate(spec);
    if (!(dt > 0.0)) throw DomainError("sample_kernel: dt must be > 0");
    if (!(t_end >= t_begin)) throw DomainError("sample_kernel: empty interval");
    if (const auto* lk = std::get_if<LimitKernel>(&spec)) {
        require_order(order, 2);
        return sample_limit_kernel(*lk, order, dt, t_begin, t_end);
    }
    const std::size_t n = static_cast<std::size_t>(std::floor((t_end - t_begin) / dt + 1e-9)) + 1;
    SampledKernel out{dt, t_begin, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i < n; ++i) {
        const double t = out.time(i);
        out.values[i] = std::visit(
            [&](const auto& k) -> double {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, GaussianKernel>) {
                    return eval_gaussian_kernel(t, k.tau, k.delta, order);
                } else if constexpr (std::is_same_v<T, GammaCascadeKernel>) {
                    return eval_gamma_kernel(t, k.mu, k.K, order);
                } else if constexpr (std::is_same_v<T, ScaleTimeKernel>) {
                    return eval_scale_time_kernel(t, k.sigma, k.delta, order);
                } else {
                    return 0.0;
                }
            },
            spec);
    }
    return out;
}

}  // namespace tempscale
