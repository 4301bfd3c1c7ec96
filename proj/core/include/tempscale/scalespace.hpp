#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "tempscale/kernels.hpp"

namespace tempscale {

/// Dense [level][time] array, row-major by level.
class Plane {
public:
    Plane() = default;
    Plane(std::size_t levels, std::size_t samples, double fill = 0.0)
        : levels_(levels), samples_(samples), data_(levels * samples, fill) {}

    std::size_t levels() const { return levels_; }
    std::size_t samples() const { return samples_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t k, std::size_t i) { return data_[k * samples_ + i]; }
    double operator()(std::size_t k, std::size_t i) const { return data_[k * samples_ + i]; }

    std::span<double> row(std::size_t k) { return {data_.data() + k * samples_, samples_}; }
    std::span<const double> row(std::size_t k) const { return {data_.data() + k * samples_, samples_}; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t levels_ = 0;
    std::size_t samples_ = 0;
    std::vector<double> data_;
};

enum class LadderMode { UniformVariance, Logarithmic };

/// How a continuous stage variance is turned into a first-order recursive filter.
enum class Discretization {
    // a = 1/(1 + mu_d), mu_d chosen so the discrete stage has variance exactly mu^2.
    VarianceMatched,
    // a = 1/(1 + mu/dt).
    BackwardEuler,
};

struct UniformVarianceParams {
    double mu = 1.0;
    int K_levels = 1;
};

struct LogarithmicParams {
    double c = 2.0;
    double tau_max = 1.0;
    int K_levels = 1;
    // Extra stages realizing the finest exposed level as a limit-kernel tail.
    int guard = 8;
};

using LadderParams = std::variant<UniformVarianceParams, LogarithmicParams>;

/// Exposed scale levels tau[k] and the time constants mu[k] between them.
struct ScaleLadder {
    LadderMode mode = LadderMode::Logarithmic;
    double c = 0.0;
    double tau_max = 0.0;
    double mu_uniform = 0.0;
    int guard = 0;
    std::vector<double> tau;
    std::vector<double> mu;

    std::size_t size() const { return tau.size(); }
    // Time constants of every recursive stage, guard stages first.
    std::vector<double> stage_mu() const;
    // Index into stage_mu() of the stage that completes exposed level k.
    std::size_t stage_of_level(std::size_t k) const;
};

ScaleLadder build_ladder(const LadderParams& params);
ScaleLadder build_uniform_ladder(double mu, int K_levels);
ScaleLadder build_log_ladder(double c, double tau_max, int K_levels, int guard = 8);
// Logarithmic ladder covering [tau_min, tau_max] with ratio c^2 between levels.
ScaleLadder build_log_ladder_range(double c, double tau_min, double tau_max, int guard = 8);

/// Recursive-filter coefficient a of the update y += a (x - y).
double stage_coefficient(double mu, double dt, Discretization disc);

enum class SmoothingFamily { Causal, Gaussian };

struct TemporalScaleSpace {
    SmoothingFamily family = SmoothingFamily::Causal;
    ScaleLadder ladder;
    std::vector<double> tau;
    double dt = 1.0;
    Discretization discretization = Discretization::VarianceMatched;
    Plane L;
    std::optional<Plane> d1;
    std::optional<Plane> d2;
    // Per-level delay in time units; zero on the Gaussian path.
    std::vector<double> delay;

    std::size_t levels() const { return L.levels(); }
    std::size_t samples() const { return L.samples(); }
    const Plane& derivative(int order) const;
};

TemporalScaleSpace smooth(std::span<const double> signal, double dt, const ScaleLadder& ladder,
                          Discretization disc = Discretization::VarianceMatched);

/// Per-stage running state for sample-by-sample smoothing.
class IntegratorState {
public:
    IntegratorState() = default;
    IntegratorState(const ScaleLadder& ladder, double dt, Discretization disc = Discretization::VarianceMatched);

    bool initialized() const { return initialized_; }
    std::size_t levels() const { return exposed_.size(); }
    std::size_t samples_seen() const { return count_; }
    void reset();
    // Sets every stage to the steady state of a constant input.
    void prime(double value);

    friend std::vector<double> stream_step(IntegratorState& state, double sample);
    friend void stream_step_into(IntegratorState& state, double sample, std::span<double> out);

private:
    bool initialized_ = false;
    std::vector<double> coeff_;
    std::vector<double> value_;
    std::vector<std::size_t> exposed_;
    std::size_t count_ = 0;
};

/// Advances every stage by one sample; returns the exposed level outputs.
std::vector<double> stream_step(IntegratorState& state, double sample);
void stream_step_into(IntegratorState& state, double sample, std::span<double> out);

/// Causal backward differences of every level; the first order indices replicate the first valid value.
Plane temporal_derivative(const TemporalScaleSpace& space, int order);
Plane backward_difference(const Plane& L, double dt, int order);
void compute_derivatives(TemporalScaleSpace& space);

/// Discrete impulse response of exposed level k as a density (values / dt).
SampledKernel impulse_response(const ScaleLadder& ladder, std::size_t level, double dt,
                               Discretization disc = Discretization::VarianceMatched,
                               std::size_t samples = 0);
// Default response length: mean + 12 standard deviations, in samples.
std::size_t impulse_response_length(const ScaleLadder& ladder, std::size_t level, double dt);

/// Time of the impulse-response maximum with parabolic sub-sample refinement.
double measure_delay(const ScaleLadder& ladder, std::size_t level, double dt,
                     Discretization disc = Discretization::VarianceMatched);
std::vector<double> measure_delays(const ScaleLadder& ladder, double dt,
                                   Discretization disc = Discretization::VarianceMatched);

/// Non-causal baseline: sampled Gaussian truncated at +-k_cut sqrt(tau), unit sum, reflect padding.
TemporalScaleSpace smooth_gaussian(std::span<const double> signal, double dt, std::span<const double> tau_list,
                                   double k_cut = 6.0);
std::vector<double> sampled_gaussian(double tau, double dt, double k_cut = 6.0);

/// Number of sign changes of the first difference (count of interior temporal extrema).
std::size_t count_extrema(std::span<const double> x);

}  // namespace tempscale
