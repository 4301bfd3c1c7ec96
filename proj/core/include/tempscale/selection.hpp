#pragma once

#include <cstddef>
#include <vector>

#include "tempscale/scalespace.hpp"

namespace tempscale {

enum class Polarity { Max, Min };

struct ScaleSpaceExtremum {
    std::size_t time_index = 0;
    std::size_t level_index = 0;
    Polarity polarity = Polarity::Max;
    double value = 0.0;
    // Parabolic offset in level units, within [-1/2, 1/2].
    double offset = 0.0;
    double tau_hat = 0.0;
    double sigma_hat = 0.0;
    double time = 0.0;
    // Detection time moved along the ridge to the refined scale.
    double ridge_time = 0.0;
    double delay_compensated_time = 0.0;
    bool suppressed = false;
};

/// Coordinate in which the parabola over three levels is fitted.
enum class ScaleCoordinate { LogTau, Linear };

struct DetectOptions {
    bool maxima = true;
    bool minima = true;
    // Extrema with |value| below this are dropped.
    double min_magnitude = 0.0;
};

/// Strict 3x3 (level x time) extrema; ties go to the earlier time, then the finer level.
std::vector<ScaleSpaceExtremum> detect_extrema(const Plane& plane, const DetectOptions& options = {});

/// Offset -b/a of the parabola through (-1, ym), (0, y0), (1, yp), clamped to [-1/2, 1/2].
double interpolation_offset(double ym, double y0, double yp);
double interpolate_scale(double offset, std::size_t level, const std::vector<double>& tau, ScaleCoordinate coord);

/// Nearest local temporal maximum of sign*row reached by a monotone walk from i.
std::size_t walk_to_temporal_max(std::span<const double> row, std::size_t i, int first_step, double sign,
                                 std::size_t bound);

/// Fills offset, tau_hat, sigma_hat, time and ridge_time from neighbouring levels' temporal maxima.
/// index_origin is added to plane columns when forming times.
void refine_scales(std::vector<ScaleSpaceExtremum>& extrema, const Plane& plane, const std::vector<double>& tau,
                   double dt, ScaleCoordinate coord, const std::vector<std::size_t>& walk_bound,
                   std::size_t index_origin = 0);

/// Walk bound per level: ceil(8 delay / dt) samples.
std::vector<std::size_t> walk_bounds(const std::vector<double>& delay, double dt);

/// Marks extrema dominated by a larger response on the adjacent finer (earlier) or coarser (later) level.
void post_filter(std::vector<ScaleSpaceExtremum>& extrema, const Plane& plane,
                 const std::vector<std::size_t>& walk_bound);

/// Delay at the refined scale, linearly interpolated between levels.
double interpolated_delay(const ScaleSpaceExtremum& e, const std::vector<double>& delay);
double compensate_delay(const ScaleSpaceExtremum& e, const std::vector<double>& delay);

struct QuasiQuadratureSpec {
    double Gamma = 0.0;
    double C = 0.0;

    static QuasiQuadratureSpec from_gamma(double Gamma);
};

/// (L_z^2 + C L_zz^2) / t^Gamma, with t counted from the first sample and t = 0 mapped to dt.
Plane quasi_quadrature(const Plane& Lz, const Plane& Lzz, const QuasiQuadratureSpec& spec, double dt);

struct ProfilePeak {
    std::size_t level = 0;
    double offset = 0.0;
    double tau_hat = 0.0;
    double sigma_hat = 0.0;
    double value = 0.0;
};

struct ScaleProfile {
    std::vector<double> tau;
    std::vector<double> values;
    std::vector<ProfilePeak> peaks;
};

/// Per-level sums over time; interior local maxima are reported with interpolated scale.
ScaleProfile scale_profile(const Plane& map, const std::vector<double>& tau,
                           ScaleCoordinate coord = ScaleCoordinate::LogTau, std::size_t first_sample = 0);

}  // namespace tempscale
