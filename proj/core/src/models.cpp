#include "tempscale/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

#include "tempscale/errors.hpp"
#include "tempscale/quadrature.hpp"
#include "tempscale/scalespace.hpp"

namespace tempscale {

namespace {

constexpr double kPi = std::numbers::pi;

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw NumericError(std::string(what) + ": non-finite result");
    return v;
}

// log of U(mu (K' - 1); mu, K'), the value of the shifted gamma kernel at its mode.
double log_gamma_mode_value(double Kp, double mu) {
    return (Kp - 1.0) * std::log(Kp - 1.0) - (Kp - 1.0) - std::log(mu) - std::lgamma(Kp);
}

double erf_step(double t, double center, double tau) {
    return 0.5 * (1.0 + std::erf((t - center) / std::sqrt(2.0 * tau)));
}

}  // namespace

std::vector<double> generate(const ModelSignal& model, double dt, double duration) {
    if (!(dt > 0.0)) throw DomainError("generate: dt must be > 0");
    if (!(duration > 0.0)) throw DomainError("generate: duration must be > 0");
    const auto n = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
    std::vector<double> out(n, 0.0);
    auto t_of = [dt](std::size_t i) { return dt * static_cast<double>(i); };

    if (const auto* m = std::get_if<GammaPeak>(&model)) {
        for (std::size_t i = 0; i < n; ++i) out[i] = eval_gamma_kernel(t_of(i), m->mu, m->K0, 0);
    } else if (const auto* m = std::get_if<GammaOnsetRamp>(&model)) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += eval_gamma_kernel(t_of(i), m->mu, m->K0, 0) * dt;
            out[i] = acc;
        }
    } else if (const auto* m = std::get_if<Sine>(&model)) {
        for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(m->omega0 * t_of(i) + m->phase);
    } else if (const auto* m = std::get_if<Chirp>(&model)) {
        if (!(m->a > 0.0)) throw DomainError("generate: chirp a must be > 0");
        for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(std::exp((m->b - t_of(i)) / m->a));
    } else if (const auto* m = std::get_if<GaussianPeak>(&model)) {
        for (std::size_t i = 0; i < n; ++i) out[i] = eval_gaussian_kernel(t_of(i), m->tau0, m->center, 0);
    } else if (const auto* m = std::get_if<GaussianRamp>(&model)) {
        for (std::size_t i = 0; i < n; ++i) out[i] = erf_step(t_of(i), m->center, m->tau0);
    } else {
        const auto& lk = std::get<LimitKernelPeak>(model);
        if (!(lk.tau0 > lk.tau_floor) || !(lk.tau_floor > 0.0)) throw DomainError("generate: need 0 < tau_floor < tau0");
        const int K = static_cast<int>(std::ceil(std::log(lk.tau0 / lk.tau_floor) / std::log(lk.c * lk.c))) + 1;
        const auto ladder = build_log_ladder(lk.c, lk.tau0, K, 0);
        out = impulse_response(ladder, ladder.size() - 1, dt, Discretization::VarianceMatched, n).values;
    }
    return out;
}

double signature_peak_uniform(double K0, double mu, double gamma, double K) {
    if (!(K > 0.0) || !(K0 >= 1.0) || !(mu > 0.0)) throw DomainError("signature_peak_uniform: need K > 0, K0 >= 1, mu > 0");
    const double Kp = K + K0;
    const double lg = gamma * std::log(K) + (2.0 * gamma - 3.0) * std::log(mu) - Kp + 1.0 +
                      (Kp - 2.0) * std::log(Kp - 1.0) - std::lgamma(Kp);
    return checked(std::exp(lg), "signature_peak_uniform");
}

double gamma_kernel_deriv_lp_norm(double mu, double K, int order, double p) {
    if (order != 1 && order != 2) throw DomainError("gamma_kernel_deriv_lp_norm: order must be 1 or 2");
    if (!(K >= order + 1.0)) throw DomainError("gamma_kernel_deriv_lp_norm: K too small for the order");
    auto f = [mu, K, order, p](double t) { return std::pow(std::abs(eval_gamma_kernel_real(t, mu, K, order)), p); };
    std::vector<double> breaks;
    if (order == 1) {
        breaks.push_back(mu * (K - 1.0));
    } else {
        const double s = std::sqrt(K - 1.0);
        breaks = {mu * (K - 1.0 - s), mu * (K - 1.0 + s)};
    }
    const double t_cut = mu * (K - 1.0) + 40.0 * std::sqrt(K) * mu + 40.0 * mu;
    return std::pow(quad::integrate_piecewise(f, 0.0, t_cut, breaks, 1e-12), 1.0 / p);
}

double signature_peak_uniform_lp(double K0, double mu, double p, double K) {
    const double Kp = K + K0;
    const double mag = std::exp(log_gamma_mode_value(Kp, mu)) / (mu * mu * (Kp - 1.0));
    return mag * reference_gaussian_norm(2, p) / gamma_kernel_deriv_lp_norm(mu, K, 2, p);
}

double signature_ramp_uniform(double K0, double mu, const NormalizationSpec& spec, double K) {
    if (!(K > 0.0) || !(K0 >= 1.0) || !(mu > 0.0)) throw DomainError("signature_ramp_uniform: need K > 0, K0 >= 1, mu > 0");
    const double Kp = K + K0;
    const double log_u = log_gamma_mode_value(Kp, mu);
    if (spec.mode == NormMode::Variance) {
        return checked(std::exp(spec.value * (0.5 * std::log(K) + std::log(mu)) + log_u), "signature_ramp_uniform");
    }
    return std::exp(log_u) * reference_gaussian_norm(1, spec.value) / gamma_kernel_deriv_lp_norm(mu, K, 1, spec.value);
}

double signature_sine_uniform(double omega0, double mu, int n, double gamma, double K) {
    if (!(K > 0.0) || !(mu > 0.0)) throw DomainError("signature_sine_uniform: need K > 0, mu > 0");
    return std::pow(K * mu * mu, n * gamma / 2.0) * std::pow(omega0, n) /
           std::pow(1.0 + mu * mu * omega0 * omega0, K / 2.0);
}

double sine_uniform_argmax(double omega0, double mu, int n, double gamma) {
    return gamma * n / std::log1p(mu * mu * omega0 * omega0);
}

double signature_sine_limit(double omega0, double tau, double c, int n, double gamma, int truncation_stages) {
    const auto f = limit_kernel_fourier(omega0, tau, c, truncation_stages);
    return std::pow(tau, n * gamma / 2.0) * std::pow(omega0, n) * f.magnitude;
}

double signature_det_hessian_temporal(double K0, double mu, double gamma, double K) {
    if (!(K > 0.0) || !(K0 >= 1.0) || !(mu > 0.0)) throw DomainError("signature_det_hessian_temporal: bad parameters");
    const double Kp = K + K0;
    const double lg = gamma * std::log(mu * mu * K) + 3.0 * log_gamma_mode_value(Kp, mu) - std::log(mu * mu * (Kp - 1.0));
    return checked(std::exp(lg), "signature_det_hessian_temporal");
}

double postnorm_magnitude_uniform(double K0, double K) { return K / (K + K0 - 1.0); }

double ramp_magnitude_stirling(double K0, double K) {
    return std::sqrt(K) / (std::sqrt(2.0 * kPi) * std::sqrt(K + K0 - 1.0));
}

BaselineEstimate gaussian_baseline_estimates(const ModelSignal& model, int n, double gamma) {
    BaselineEstimate r;
    if (const auto* m = std::get_if<GaussianPeak>(&model)) {
        if (n != 2) throw DomainError("gaussian_baseline_estimates: peak analysis uses n = 2");
        if (!(gamma < 1.5)) throw DomainError("gaussian_baseline_estimates: peak needs gamma < 3/2");
        r.tau_hat = 2.0 * gamma / (3.0 - 2.0 * gamma) * m->tau0;
        const double tt = m->tau0 + r.tau_hat;
        r.max_magnitude = std::pow(r.tau_hat, gamma) / (std::sqrt(2.0 * kPi) * std::pow(tt, 1.5));
        r.postnorm_magnitude = std::pow(r.tau_hat, 1.0 - gamma) * r.max_magnitude;
        return r;
    }
    if (const auto* m = std::get_if<GaussianRamp>(&model)) {
        if (n != 1) throw DomainError("gaussian_baseline_estimates: ramp analysis uses n = 1");
        if (gamma >= 1.0) {
            r.tau_hat = std::numeric_limits<double>::infinity();
            r.max_magnitude = 1.0 / std::sqrt(2.0 * kPi);
            r.postnorm_magnitude = r.max_magnitude;
            return r;
        }
        r.tau_hat = gamma / (1.0 - gamma) * m->tau0;
        r.max_magnitude = std::pow(r.tau_hat, gamma / 2.0) / std::sqrt(2.0 * kPi * (m->tau0 + r.tau_hat));
        r.postnorm_magnitude = std::pow(r.tau_hat, (1.0 - gamma) / 2.0) * r.max_magnitude;
        return r;
    }
    if (const auto* m = std::get_if<Sine>(&model)) {
        const double w = m->omega0;
        r.tau_hat = n * gamma / (w * w);
        const double gn = gamma * n;
        r.max_magnitude = std::pow(gn, gn / 2.0) * std::exp(-gn / 2.0) * std::pow(w, (1.0 - gamma) * n);
        r.postnorm_magnitude = std::pow(r.tau_hat, (1.0 - gamma) * n / 2.0) * r.max_magnitude;
        return r;
    }
    throw DomainError("gaussian_baseline_estimates: model must be GaussianPeak, GaussianRamp or Sine");
}

bool Signature::unimodal() const {
    int changes = 0;
    int last = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes <= 1 && !(changes == 1 && last == 1);
}

Signature tabulate_signature(const std::function<double(double)>& f, const std::vector<double>& grid) {
    Signature s;
    s.scale = grid;
    s.values.reserve(grid.size());
    for (double x : grid) s.values.push_back(f(x));
    if (!s.values.empty()) {
        const auto it = std::max_element(s.values.begin(), s.values.end());
        s.argmax = grid[static_cast<std::size_t>(it - s.values.begin())];
        s.max_value = *it;
    }
    return s;
}

ArgmaxResult continuous_argmax(const std::function<double(double)>& f, double lo, double hi,
                               const ArgmaxOptions& options) {
    if (!(hi > lo)) throw DomainError("continuous_argmax: empty bracket");
    if (options.log_scale && !(lo > 0.0)) throw DomainError("continuous_argmax: log search needs lo > 0");
    const bool lg = options.log_scale;
    auto to_x = [lg](double u) { return lg ? std::exp(u) : u; };
    auto g = [&](double u) { return f(to_x(u)); };
    double a = lg ? std::log(lo) : lo;
    double b = lg ? std::log(hi) : hi;
    const double floor_u = lg ? (options.lower_limit > 0.0 ? std::log(options.lower_limit) : -1e300) : options.lower_limit;
    const int m = std::max(options.grid, 4);

    for (int attempt = 0; attempt <= options.max_expansions; ++attempt) {
        std::vector<double> u(static_cast<std::size_t>(m + 1));
        std::vector<double> v(u.size());
        for (int i = 0; i <= m; ++i) {
            u[static_cast<std::size_t>(i)] = a + (b - a) * i / m;
            v[static_cast<std::size_t>(i)] = g(u[static_cast<std::size_t>(i)]);
        }
        const auto best = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        const double width = b - a;
        if (best == 0 && a > floor_u) {
            a = std::max(floor_u, a - width);
            continue;
        }
        if (best == u.size() - 1) {
            b = b + width;
            continue;
        }
        const double l = u[best == 0 ? 0 : best - 1];
        const double r = u[std::min(best + 1, u.size() - 1)];
        auto neg = [&](double x) { return -g(x); };
        const auto res = boost::math::tools::brent_find_minima(neg, l, r, 50);
        return {to_x(res.first), -res.second};
    }
    throw NumericError("continuous_argmax: maximum not bracketed after expansions");
}

}  // namespace tempscale
