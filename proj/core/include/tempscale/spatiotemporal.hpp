#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tempscale/normalization.hpp"
#include "tempscale/scalespace.hpp"
#include "tempscale/selection.hpp"

namespace tempscale {

/// Frames of width x height voxels; sample (x, y, f) at data[(f * height + y) * width + x].
struct VideoVolume {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t frames = 0;
    double dx = 1.0;
    double dt = 1.0;
    std::vector<double> data;

    VideoVolume() = default;
    VideoVolume(std::size_t w, std::size_t h, std::size_t f, double dx_ = 1.0, double dt_ = 1.0, double fill = 0.0)
        : width(w), height(h), frames(f), dx(dx_), dt(dt_), data(w * h * f, fill) {}

    std::size_t index(std::size_t x, std::size_t y, std::size_t f) const { return (f * height + y) * width + x; }
    double& operator()(std::size_t x, std::size_t y, std::size_t f) { return data[index(x, y, f)]; }
    double operator()(std::size_t x, std::size_t y, std::size_t f) const { return data[index(x, y, f)]; }
    bool same_shape(const VideoVolume& o) const {
        return width == o.width && height == o.height && frames == o.frames;
    }
};

void validate(const VideoVolume& v);

/// Per-frame separable sampled Gaussian of variance s (length^2), reflect padding.
VideoVolume smooth_spatial(const VideoVolume& v, double s, double k_cut = 6.0);
/// Temporal cascade per pixel; one volume per exposed ladder level.
std::vector<VideoVolume> smooth_temporal(const VideoVolume& v, const ScaleLadder& ladder,
                                         Discretization disc = Discretization::VarianceMatched);

struct SpatioTemporalScaleSpace {
    std::vector<double> s_list;
    ScaleLadder ladder;
    Discretization discretization = Discretization::VarianceMatched;
    // L[j][k]: spatial scale j, temporal level k.
    std::vector<std::vector<VideoVolume>> L;
};

SpatioTemporalScaleSpace smooth_volume(const VideoVolume& v, const std::vector<double>& s_list, const ScaleLadder& ladder,
                                       Discretization disc = Discretization::VarianceMatched);

using ScaleField = std::vector<std::vector<VideoVolume>>;

/// s^{gamma_s} alpha_n(tau) d^n/dt^n (L_xx + L_yy), with 3-point spatial stencils and causal temporal differences.
ScaleField operator_lgn(const SpatioTemporalScaleSpace& space, int n, double gamma_s, const NormalizationSpec& temporal);

/// s^{2 gamma_s} tau^{gamma_tau} det of the spatio-temporal Hessian.
ScaleField det_spatiotemporal_hessian(const SpatioTemporalScaleSpace& space, double gamma_s, double gamma_tau);

struct JointScaleEstimate {
    std::size_t spatial_index = 0;
    std::size_t temporal_index = 0;
    std::size_t frame = 0;
    double value = 0.0;
    double s_hat = 0.0;
    double tau_hat = 0.0;
};

/// Strongest response over (spatial scale, temporal level, frame) at pixel (x, y), with parabolic refinement.
JointScaleEstimate joint_scale_at(const ScaleField& field, const std::vector<double>& s_list, const std::vector<double>& tau,
                                  ScaleCoordinate temporal_coord, std::size_t x, std::size_t y, Polarity polarity);

/// g(x, y; s0) U(t; mu, K0), centred spatially.
VideoVolume blink_generator(std::size_t width, std::size_t height, std::size_t frames, double dx, double dt, double s0,
                            int K0, double mu);
/// g(x, y; s0) times the temporal primitive of U(t; mu, K0).
VideoVolume onset_blob_generator(std::size_t width, std::size_t height, std::size_t frames, double dx, double dt,
                                 double s0, int K0, double mu);

/// Little-endian header (uint32 width, height, frames; float64 dx, dt) then float32 voxels.
void write_raw_volume(std::ostream& out, const VideoVolume& v);
VideoVolume read_raw_volume(std::istream& in);
void write_raw_volume(const std::string& path, const VideoVolume& v);
VideoVolume read_raw_volume(const std::string& path);

}  // namespace tempscale
