#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tempscale/normalization.hpp"
#include "tempscale/scalespace.hpp"
#include "tempscale/selection.hpp"

namespace tempscale {

enum class KernelFamily { LimitKernel, UniformCascade, Gaussian };

enum class PolarityFilter { Max, Min, Both };

struct PipelineConfig {
    KernelFamily family = KernelFamily::LimitKernel;
    double dt = 1.0;

    // Logarithmic ladder (limit kernel and Gaussian paths).
    double c = 1.4142135623730951;
    double tau_min = 1.0;
    double tau_max = 1024.0;
    int guard = 8;
    // Gaussian path: levels per octave of sigma; 0 reuses c.
    int gaussian_levels_per_octave = 0;
    double gaussian_k_cut = 6.0;

    // Uniform cascade.
    double mu = 1.0;
    int uniform_levels = 16;

    Discretization discretization = Discretization::VarianceMatched;

    NormalizationSpec normalization = NormalizationSpec::lp(2, 2.0 / 3.0);
    // Multiplies the normalized derivative before detection (-1 analyses -L_zz).
    double sign = -1.0;

    PolarityFilter polarity = PolarityFilter::Max;
    double min_magnitude = 0.0;
    bool post_filter = true;
    bool delay_compensation = true;

    bool quasi_quadrature = false;
    double qq_Gamma = 0.0;
    // Variance-normalization power of both quasi-quadrature derivatives.
    double qq_gamma = 1.0;
    bool scale_profile = false;
    // Samples skipped at the start when summing the profile.
    std::size_t profile_skip = 0;
};

void validate(const PipelineConfig& config);

/// Exposed scale levels implied by the configuration.
std::vector<double> pipeline_taus(const PipelineConfig& config);
ScaleLadder pipeline_ladder(const PipelineConfig& config);
ScaleCoordinate pipeline_coordinate(const PipelineConfig& config);

struct PipelineResult {
    TemporalScaleSpace space;
    NormalizedPlanes response;
    std::vector<ScaleSpaceExtremum> extrema;
    std::optional<Plane> quasi_quadrature;
    std::optional<ScaleProfile> profile;

    std::vector<ScaleSpaceExtremum> survivors() const;
};

TemporalScaleSpace build_scale_space(std::span<const double> signal, const PipelineConfig& config);
PipelineResult run_pipeline(std::span<const double> signal, const PipelineConfig& config);

/// Detection, refinement, post-filtering and delay compensation on a signed response plane.
std::vector<ScaleSpaceExtremum> select_extrema(const Plane& response, const std::vector<double>& tau,
                                               const std::vector<double>& delay, double dt,
                                               const PipelineConfig& config);

}  // namespace tempscale
