#include "tempscale/scalespace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tempscale/errors.hpp"

namespace tempscale {

std::vector<double> ScaleLadder::stage_mu() const {
    if (mode == LadderMode::UniformVariance || guard == 0 || tau.empty()) return mu;
    std::vector<double> out;
    out.reserve(mu.size() + static_cast<std::size_t>(guard));
    const double c2 = c * c;
    out.push_back(std::sqrt(tau[0] * std::pow(c2, -guard)));
    for (int j = guard - 1; j >= 0; --j) out.push_back(std::sqrt(tau[0] * std::pow(c2, -j) * (1.0 - 1.0 / c2)));
    out.insert(out.end(), mu.begin() + 1, mu.end());
    return out;
}

std::size_t ScaleLadder::stage_of_level(std::size_t k) const {
    if (mode == LadderMode::UniformVariance) return k;
    return static_cast<std::size_t>(guard) + k;
}

ScaleLadder build_uniform_ladder(double mu, int K_levels) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("build_ladder: mu must be > 0");
    if (K_levels < 1) throw DomainError("build_ladder: K_levels must be >= 1");
    ScaleLadder l;
    l.mode = LadderMode::UniformVariance;
    l.mu_uniform = mu;
    l.tau.resize(static_cast<std::size_t>(K_levels));
    l.mu.assign(static_cast<std::size_t>(K_levels), mu);
    for (int k = 0; k < K_levels; ++k) l.tau[static_cast<std::size_t>(k)] = (k + 1) * mu * mu;
    l.tau_max = l.tau.back();
    return l;
}

ScaleLadder build_log_ladder(double c, double tau_max, int K_levels, int guard) {
    if (!(c > 1.0) || !std::isfinite(c)) throw DomainError("build_ladder: c must be > 1");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw DomainError("build_ladder: tau_max must be > 0");
    if (K_levels < 1) throw DomainError("build_ladder: K_levels must be >= 1");
    if (guard < 0) throw DomainError("build_ladder: guard must be >= 0");
    ScaleLadder l;
    l.mode = LadderMode::Logarithmic;
    l.c = c;
    l.tau_max = tau_max;
    l.guard = guard;
    const auto n = static_cast<std::size_t>(K_levels);
    l.tau.resize(n);
    l.mu.resize(n);
    const double root = std::sqrt(c * c - 1.0) * std::sqrt(tau_max);
    for (int k = 1; k <= K_levels; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        l.tau[i] = std::pow(c, 2.0 * (k - K_levels)) * tau_max;
        l.mu[i] = (k == 1) ? std::pow(c, 1 - K_levels) * std::sqrt(tau_max) : std::pow(c, k - K_levels - 1) * root;
    }
    return l;
}

ScaleLadder build_log_ladder_range(double c, double tau_min, double tau_max, int guard) {
    if (!(tau_min > 0.0) || !(tau_max >= tau_min)) throw DomainError("build_ladder: need 0 < tau_min <= tau_max");
    if (!(c > 1.0)) throw DomainError("build_ladder: c must be > 1");
    const int K = static_cast<int>(std::lround(std::log(tau_max / tau_min) / (2.0 * std::log(c)))) + 1;
    return build_log_ladder(c, tau_max, K, guard);
}

ScaleLadder build_ladder(const LadderParams& params) {
    if (const auto* u = std::get_if<UniformVarianceParams>(&params)) return build_uniform_ladder(u->mu, u->K_levels);
    const auto& g = std::get<LogarithmicParams>(params);
    return build_log_ladder(g.c, g.tau_max, g.K_levels, g.guard);
}

double stage_coefficient(double mu, double dt, Discretization disc) {
    const double m = mu / dt;
    if (disc == Discretization::BackwardEuler) return 1.0 / (1.0 + m);
    const double md = (std::sqrt(1.0 + 4.0 * m * m) - 1.0) / 2.0;
    return 1.0 / (1.0 + md);
}

const Plane& TemporalScaleSpace::derivative(int order) const {
    const auto& p = order == 1 ? d1 : d2;
    if ((order != 1 && order != 2) || !p) throw UsageError("derivative plane of order " + std::to_string(order) + " not computed");
    return *p;
}

IntegratorState::IntegratorState(const ScaleLadder& ladder, double dt, Discretization disc) {
    if (!(dt > 0.0)) throw DomainError("IntegratorState: dt must be > 0");
    if (ladder.size() == 0) throw DomainError("IntegratorState: empty ladder");
    for (double m : ladder.stage_mu()) coeff_.push_back(stage_coefficient(m, dt, disc));
    value_.assign(coeff_.size(), 0.0);
    for (std::size_t k = 0; k < ladder.size(); ++k) exposed_.push_back(ladder.stage_of_level(k));
    initialized_ = true;
}

void IntegratorState::reset() {
    std::fill(value_.begin(), value_.end(), 0.0);
    count_ = 0;
}

void IntegratorState::prime(double value) {
    if (!initialized_) throw UsageError("prime: state is not initialized");
    std::fill(value_.begin(), value_.end(), value);
}

void stream_step_into(IntegratorState& state, double sample, std::span<double> out) {
    if (!state.initialized_) throw UsageError("stream_step: state is not initialized");
    if (out.size() < state.exposed_.size()) throw UsageError("stream_step: output span too small");
    double x = sample;
    for (std::size_t s = 0; s < state.coeff_.size(); ++s) {
        double& y = state.value_[s];
        y = y + state.coeff_[s] * (x - y);
        x = y;
    }
    for (std::size_t k = 0; k < state.exposed_.size(); ++k) out[k] = state.value_[state.exposed_[k]];
    ++state.count_;
}

std::vector<double> stream_step(IntegratorState& state, double sample) {
    if (!state.initialized_) throw UsageError("stream_step: state is not initialized");
    std::vector<double> out(state.exposed_.size());
    stream_step_into(state, sample, out);
    return out;
}

TemporalScaleSpace smooth(std::span<const double> signal, double dt, const ScaleLadder& ladder, Discretization disc) {
    if (signal.empty()) throw DomainError("smooth: empty signal");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("smooth: dt must be > 0");
    for (double v : signal)
        if (!std::isfinite(v)) throw DomainError("smooth: non-finite sample");
    TemporalScaleSpace space;
    space.family = SmoothingFamily::Causal;
    space.ladder = ladder;
    space.tau = ladder.tau;
    space.dt = dt;
    space.discretization = disc;
    space.L = Plane(ladder.size(), signal.size());

    IntegratorState state(ladder, dt, disc);
    std::vector<double> out(ladder.size());
    for (std::size_t i = 0; i < signal.size(); ++i) {
        stream_step_into(state, signal[i], out);
        for (std::size_t k = 0; k < out.size(); ++k) space.L(k, i) = out[k];
    }
    space.delay = measure_delays(ladder, dt, disc);
    return space;
}

Plane backward_difference(const Plane& L, double dt, int order) {
    if (order != 1 && order != 2) throw DomainError("temporal_derivative: order must be 1 or 2");
    const std::size_t n = L.samples();
    if (n < 3) throw DomainError("temporal_derivative: need at least 3 samples");
    Plane D(L.levels(), n);
    const double s = order == 1 ? 1.0 / dt : 1.0 / (dt * dt);
    const auto first = static_cast<std::size_t>(order);
    for (std::size_t k = 0; k < L.levels(); ++k) {
        for (std::size_t i = first; i < n; ++i) {
            D(k, i) = order == 1 ? (L(k, i) - L(k, i - 1)) * s : (L(k, i) - 2.0 * L(k, i - 1) + L(k, i - 2)) * s;
        }
        for (std::size_t i = 0; i < first; ++i) D(k, i) = D(k, first);
    }
    return D;
}

Plane temporal_derivative(const TemporalScaleSpace& space, int order) { return backward_difference(space.L, space.dt, order); }

void compute_derivatives(TemporalScaleSpace& space) {
    space.d1 = temporal_derivative(space, 1);
    space.d2 = temporal_derivative(space, 2);
}

std::size_t impulse_response_length(const ScaleLadder& ladder, std::size_t level, double dt) {
    if (level >= ladder.size()) throw DomainError("impulse_response: level out of range");
    const auto mus = ladder.stage_mu();
    const std::size_t last = ladder.stage_of_level(level);
    double mean = 0.0;
    for (std::size_t s = 0; s <= last; ++s) mean += mus[s];
    const double span = mean + 12.0 * std::sqrt(ladder.tau[level]) + 8.0 * mus[last];
    return static_cast<std::size_t>(std::ceil(span / dt)) + 16;
}

SampledKernel impulse_response(const ScaleLadder& ladder, std::size_t level, double dt, Discretization disc,
                               std::size_t samples) {
    if (level >= ladder.size()) throw DomainError("impulse_response: level out of range");
    if (!(dt > 0.0)) throw DomainError("impulse_response: dt must be > 0");
    if (samples == 0) samples = impulse_response_length(ladder, level, dt);
    const auto mus = ladder.stage_mu();
    const std::size_t last = ladder.stage_of_level(level);
    std::vector<double> y(samples, 0.0);
    y[0] = 1.0;
    for (std::size_t s = 0; s <= last; ++s) {
        const double a = stage_coefficient(mus[s], dt, disc);
        double prev = 0.0;
        for (double& v : y) {
            prev = prev + a * (v - prev);
            v = prev;
        }
    }
    for (double& v : y) v /= dt;
    return {dt, 0.0, std::move(y)};
}

double measure_delay(const ScaleLadder& ladder, std::size_t level, double dt, Discretization disc) {
    const auto h = impulse_response(ladder, level, dt, disc);
    const auto& v = h.values;
    const auto it = std::max_element(v.begin(), v.end());
    const auto i = static_cast<std::size_t>(it - v.begin());
    double off = 0.0;
    if (i > 0 && i + 1 < v.size()) {
        const double a = v[i + 1] - 2.0 * v[i] + v[i - 1];
        const double b = (v[i + 1] - v[i - 1]) / 2.0;
        if (a != 0.0) off = std::clamp(-b / a, -0.5, 0.5);
    }
    return dt * (static_cast<double>(i) + off);
}

std::vector<double> measure_delays(const ScaleLadder& ladder, double dt, Discretization disc) {
    std::vector<double> out(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k) out[k] = measure_delay(ladder, k, dt, disc);
    return out;
}

std::vector<double> sampled_gaussian(double tau, double dt, double k_cut) {
    if (!(tau > 0.0)) throw DomainError("sampled_gaussian: tau must be > 0");
    const double s = std::sqrt(tau) / dt;
    const auto R = static_cast<std::ptrdiff_t>(std::ceil(k_cut * s));
    std::vector<double> g(static_cast<std::size_t>(2 * R + 1));
    for (std::ptrdiff_t j = -R; j <= R; ++j) {
        const double x = static_cast<double>(j);
        g[static_cast<std::size_t>(j + R)] = std::exp(-x * x / (2.0 * s * s));
    }
    const double sum = std::accumulate(g.begin(), g.end(), 0.0);
    for (double& v : g) v /= sum;
    return g;
}

namespace {

// Reflect index into [0, n) without repeating the edge sample.
std::size_t reflect_index(std::ptrdiff_t j, std::ptrdiff_t n) {
    if (n == 1) return 0;
    const std::ptrdiff_t period = 2 * (n - 1);
    j %= period;
    if (j < 0) j += period;
    if (j >= n) j = period - j;
    return static_cast<std::size_t>(j);
}

}  // namespace

TemporalScaleSpace smooth_gaussian(std::span<const double> signal, double dt, std::span<const double> tau_list,
                                   double k_cut) {
    if (signal.empty()) throw DomainError("smooth_gaussian: empty signal");
    if (!(dt > 0.0)) throw DomainError("smooth_gaussian: dt must be > 0");
    for (std::size_t k = 0; k < tau_list.size(); ++k) {
        if (!(tau_list[k] > 0.0)) throw DomainError("smooth_gaussian: tau must be > 0");
        if (k > 0 && !(tau_list[k] > tau_list[k - 1])) throw DomainError("smooth_gaussian: tau_list must ascend");
    }
    TemporalScaleSpace space;
    space.family = SmoothingFamily::Gaussian;
    space.tau.assign(tau_list.begin(), tau_list.end());
    space.dt = dt;
    space.L = Plane(tau_list.size(), signal.size());
    space.delay.assign(tau_list.size(), 0.0);
    const auto n = static_cast<std::ptrdiff_t>(signal.size());
    for (std::size_t k = 0; k < tau_list.size(); ++k) {
        const auto g = sampled_gaussian(tau_list[k], dt, k_cut);
        const auto R = static_cast<std::ptrdiff_t>(g.size() / 2);
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::ptrdiff_t j = -R; j <= R; ++j) acc += g[static_cast<std::size_t>(j + R)] * signal[reflect_index(i - j, n)];
            space.L(k, static_cast<std::size_t>(i)) = acc;
        }
    }
    return space;
}

std::size_t count_extrema(std::span<const double> x) {
    std::size_t count = 0;
    int last = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double d = x[i] - x[i - 1];
        const int s = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

}  // namespace tempscale
