#include "tempscale/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "tempscale/errors.hpp"

namespace tempscale {

void validate(const PipelineConfig& config) {
    if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw DomainError("dt must be > 0");
    if (config.family == KernelFamily::UniformCascade) {
        if (!(config.mu > 0.0)) throw DomainError("mu must be > 0");
        if (config.uniform_levels < 3) throw DomainError("uniform_levels must be >= 3");
    } else {
        if (!(config.c > 1.0)) throw DomainError("c must be > 1");
        if (!(config.tau_min > 0.0) || !(config.tau_max > config.tau_min)) throw DomainError("need 0 < tau_min < tau_max");
        if (config.guard < 0) throw DomainError("guard must be >= 0");
        if (config.gaussian_levels_per_octave < 0) throw DomainError("gaussian_levels_per_octave must be >= 0");
    }
    if (config.normalization.order != 1 && config.normalization.order != 2) throw DomainError("derivative order must be 1 or 2");
    if (config.normalization.mode == NormMode::Lp && !(config.normalization.value > 0.0 && config.normalization.value <= 1.0))
        throw DomainError("p must be in (0, 1]");
    if (config.sign != 1.0 && config.sign != -1.0) throw DomainError("sign must be +1 or -1");
    if (config.quasi_quadrature && !(config.qq_Gamma < 1.0)) throw DomainError("quasi-quadrature Gamma must be < 1");
}

ScaleLadder pipeline_ladder(const PipelineConfig& config) {
    if (config.family == KernelFamily::UniformCascade) return build_uniform_ladder(config.mu, config.uniform_levels);
    return build_log_ladder_range(config.c, config.tau_min, config.tau_max, config.guard);
}

std::vector<double> pipeline_taus(const PipelineConfig& config) {
    if (config.family != KernelFamily::Gaussian || config.gaussian_levels_per_octave == 0)
        return pipeline_ladder(config).tau;
    const double ratio = std::pow(2.0, 2.0 / config.gaussian_levels_per_octave);
    const int K = static_cast<int>(std::lround(std::log(config.tau_max / config.tau_min) / std::log(ratio))) + 1;
    std::vector<double> tau(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) tau[static_cast<std::size_t>(k)] = config.tau_max * std::pow(ratio, k - (K - 1));
    return tau;
}

ScaleCoordinate pipeline_coordinate(const PipelineConfig& config) {
    return config.family == KernelFamily::UniformCascade ? ScaleCoordinate::Linear : ScaleCoordinate::LogTau;
}

std::vector<ScaleSpaceExtremum> PipelineResult::survivors() const {
    std::vector<ScaleSpaceExtremum> out;
    std::copy_if(extrema.begin(), extrema.end(), std::back_inserter(out), [](const auto& e) { return !e.suppressed; });
    return out;
}

TemporalScaleSpace build_scale_space(std::span<const double> signal, const PipelineConfig& config) {
    validate(config);
    TemporalScaleSpace space;
    if (config.family == KernelFamily::Gaussian) {
        const auto tau = pipeline_taus(config);
        space = smooth_gaussian(signal, config.dt, tau, config.gaussian_k_cut);
    } else {
        space = smooth(signal, config.dt, pipeline_ladder(config), config.discretization);
    }
    compute_derivatives(space);
    return space;
}

std::vector<ScaleSpaceExtremum> select_extrema(const Plane& response, const std::vector<double>& tau,
                                               const std::vector<double>& delay, double dt,
                                               const PipelineConfig& config) {
    DetectOptions opt;
    opt.maxima = config.polarity != PolarityFilter::Min;
    opt.minima = config.polarity != PolarityFilter::Max;
    opt.min_magnitude = config.min_magnitude;
    auto extrema = detect_extrema(response, opt);
    const auto bounds = walk_bounds(delay, dt);
    refine_scales(extrema, response, tau, dt, pipeline_coordinate(config), bounds);
    if (config.post_filter) post_filter(extrema, response, bounds);
    for (auto& e : extrema)
        e.delay_compensated_time = config.delay_compensation ? compensate_delay(e, delay) : e.ridge_time;
    return extrema;
}

PipelineResult run_pipeline(std::span<const double> signal, const PipelineConfig& config) {
    PipelineResult r;
    r.space = build_scale_space(signal, config);
    r.response = normalize_plane(r.space, config.normalization);
    if (config.sign != 1.0)
        for (std::size_t k = 0; k < r.response.values.levels(); ++k)
            for (double& v : r.response.values.row(k)) v *= config.sign;
    r.extrema = select_extrema(r.response.values, r.space.tau, r.space.delay, r.space.dt, config);

    if (config.quasi_quadrature || config.scale_profile) {
        const auto q1 = normalize_plane(r.space, NormalizationSpec::variance(1, config.qq_gamma));
        const auto q2 = normalize_plane(r.space, NormalizationSpec::variance(2, config.qq_gamma));
        r.quasi_quadrature = quasi_quadrature(q1.values, q2.values, QuasiQuadratureSpec::from_gamma(config.qq_Gamma), r.space.dt);
        if (config.scale_profile)
            r.profile = scale_profile(*r.quasi_quadrature, r.space.tau, pipeline_coordinate(config), config.profile_skip);
    }
    return r;
}

}  // namespace tempscale
