#include "tempscale/spatiotemporal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include <boost/math/special_functions/gamma.hpp>

#include "tempscale/errors.hpp"

namespace tempscale {

namespace {

std::size_t reflect(std::ptrdiff_t j, std::ptrdiff_t n) {
    if (n == 1) return 0;
    const std::ptrdiff_t period = 2 * (n - 1);
    j %= period;
    if (j < 0) j += period;
    if (j >= n) j = period - j;
    return static_cast<std::size_t>(j);
}

}  // namespace

void validate(const VideoVolume& v) {
    if (v.width < 3 || v.height < 3 || v.frames < 3) throw DomainError("VideoVolume: every axis needs at least 3 samples");
    if (!(v.dx > 0.0) || !(v.dt > 0.0)) throw DomainError("VideoVolume: dx and dt must be > 0");
    if (v.data.size() != v.width * v.height * v.frames) throw DomainError("VideoVolume: data size does not match shape");
}

VideoVolume smooth_spatial(const VideoVolume& v, double s, double k_cut) {
    validate(v);
    if (!(s > 0.0)) throw DomainError("smooth_spatial: s must be > 0");
    const auto g = sampled_gaussian(s, v.dx, k_cut);
    const auto R = static_cast<std::ptrdiff_t>(g.size() / 2);
    const auto W = static_cast<std::ptrdiff_t>(v.width);
    const auto H = static_cast<std::ptrdiff_t>(v.height);
    VideoVolume tmp = v;
    VideoVolume out = v;
    for (std::size_t f = 0; f < v.frames; ++f) {
        for (std::ptrdiff_t y = 0; y < H; ++y)
            for (std::ptrdiff_t x = 0; x < W; ++x) {
                double acc = 0.0;
                for (std::ptrdiff_t j = -R; j <= R; ++j)
                    acc += g[static_cast<std::size_t>(j + R)] * v(reflect(x - j, W), static_cast<std::size_t>(y), f);
                tmp(static_cast<std::size_t>(x), static_cast<std::size_t>(y), f) = acc;
            }
        for (std::ptrdiff_t y = 0; y < H; ++y)
            for (std::ptrdiff_t x = 0; x < W; ++x) {
                double acc = 0.0;
                for (std::ptrdiff_t j = -R; j <= R; ++j)
                    acc += g[static_cast<std::size_t>(j + R)] * tmp(static_cast<std::size_t>(x), reflect(y - j, H), f);
                out(static_cast<std::size_t>(x), static_cast<std::size_t>(y), f) = acc;
            }
    }
    return out;
}

std::vector<VideoVolume> smooth_temporal(const VideoVolume& v, const ScaleLadder& ladder, Discretization disc) {
    validate(v);
    std::vector<VideoVolume> out(ladder.size(), VideoVolume(v.width, v.height, v.frames, v.dx, v.dt));
    const std::size_t plane = v.width * v.height;
    std::vector<IntegratorState> states(plane, IntegratorState(ladder, v.dt, disc));
    std::vector<double> levels(ladder.size());
    for (std::size_t f = 0; f < v.frames; ++f) {
        for (std::size_t p = 0; p < plane; ++p) {
            stream_step_into(states[p], v.data[f * plane + p], levels);
            for (std::size_t k = 0; k < levels.size(); ++k) out[k].data[f * plane + p] = levels[k];
        }
    }
    return out;
}

SpatioTemporalScaleSpace smooth_volume(const VideoVolume& v, const std::vector<double>& s_list, const ScaleLadder& ladder,
                                       Discretization disc) {
    validate(v);
    SpatioTemporalScaleSpace space;
    space.s_list = s_list;
    space.ladder = ladder;
    space.discretization = disc;
    for (double s : s_list) space.L.push_back(smooth_temporal(smooth_spatial(v, s), ladder, disc));
    return space;
}

namespace {

struct Stencil {
    const VideoVolume& v;
    std::ptrdiff_t W, H;
    double at(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const { return v(reflect(x, W), reflect(y, H), f); }
    double xx(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const {
        return (at(x + 1, y, f) - 2.0 * at(x, y, f) + at(x - 1, y, f)) / (v.dx * v.dx);
    }
    double yy(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const {
        return (at(x, y + 1, f) - 2.0 * at(x, y, f) + at(x, y - 1, f)) / (v.dx * v.dx);
    }
    double xy(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const {
        return (at(x + 1, y + 1, f) - at(x + 1, y - 1, f) - at(x - 1, y + 1, f) + at(x - 1, y - 1, f)) /
               (4.0 * v.dx * v.dx);
    }
    double x1(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const {
        return (at(x + 1, y, f) - at(x - 1, y, f)) / (2.0 * v.dx);
    }
    double y1(std::ptrdiff_t x, std::ptrdiff_t y, std::size_t f) const {
        return (at(x, y + 1, f) - at(x, y - 1, f)) / (2.0 * v.dx);
    }
};

// Backward temporal difference of order n per pixel; the first n frames replicate frame n.
VideoVolume temporal_difference(const VideoVolume& v, int n) {
    VideoVolume out(v.width, v.height, v.frames, v.dx, v.dt);
    const std::size_t plane = v.width * v.height;
    const auto first = static_cast<std::size_t>(n);
    const double s = n == 1 ? 1.0 / v.dt : 1.0 / (v.dt * v.dt);
    for (std::size_t f = first; f < v.frames; ++f)
        for (std::size_t p = 0; p < plane; ++p) {
            const double* d = v.data.data();
            out.data[f * plane + p] = n == 1 ? (d[f * plane + p] - d[(f - 1) * plane + p]) * s
                                             : (d[f * plane + p] - 2.0 * d[(f - 1) * plane + p] + d[(f - 2) * plane + p]) * s;
        }
    for (std::size_t f = 0; f < first; ++f)
        for (std::size_t p = 0; p < plane; ++p) out.data[f * plane + p] = out.data[first * plane + p];
    return out;
}

VideoVolume laplacian(const VideoVolume& v) {
    VideoVolume out(v.width, v.height, v.frames, v.dx, v.dt);
    Stencil st{v, static_cast<std::ptrdiff_t>(v.width), static_cast<std::ptrdiff_t>(v.height)};
    for (std::size_t f = 0; f < v.frames; ++f)
        for (std::size_t y = 0; y < v.height; ++y)
            for (std::size_t x = 0; x < v.width; ++x) {
                const auto xi = static_cast<std::ptrdiff_t>(x);
                const auto yi = static_cast<std::ptrdiff_t>(y);
                out(x, y, f) = st.xx(xi, yi, f) + st.yy(xi, yi, f);
            }
    return out;
}

TemporalScaleSpace ladder_view(const SpatioTemporalScaleSpace& space, double dt) {
    TemporalScaleSpace ts;
    ts.family = SmoothingFamily::Causal;
    ts.ladder = space.ladder;
    ts.tau = space.ladder.tau;
    ts.dt = dt;
    ts.discretization = space.discretization;
    return ts;
}

}  // namespace

ScaleField operator_lgn(const SpatioTemporalScaleSpace& space, int n, double gamma_s, const NormalizationSpec& temporal) {
    if (n != 1 && n != 2) throw DomainError("operator_lgn: temporal order must be 1 or 2");
    if (space.L.empty() || space.L.front().empty()) return {};
    auto spec = temporal;
    spec.order = n;
    const auto alpha = level_prefactors(ladder_view(space, space.L.front().front().dt), spec);
    ScaleField out(space.L.size());
    for (std::size_t j = 0; j < space.L.size(); ++j) {
        const double sn = std::pow(space.s_list[j], gamma_s);
        for (std::size_t k = 0; k < space.L[j].size(); ++k) {
            auto field = temporal_difference(laplacian(space.L[j][k]), n);
            for (double& v : field.data) v *= sn * alpha[k];
            out[j].push_back(std::move(field));
        }
    }
    return out;
}

ScaleField det_spatiotemporal_hessian(const SpatioTemporalScaleSpace& space, double gamma_s, double gamma_tau) {
    ScaleField out(space.L.size());
    for (std::size_t j = 0; j < space.L.size(); ++j) {
        const double sn = std::pow(space.s_list[j], 2.0 * gamma_s);
        for (std::size_t k = 0; k < space.L[j].size(); ++k) {
            const VideoVolume& L = space.L[j][k];
            const VideoVolume Lt = temporal_difference(L, 1);
            const VideoVolume Ltt = temporal_difference(L, 2);
            const double norm = sn * std::pow(space.ladder.tau[k], gamma_tau);
            VideoVolume D(L.width, L.height, L.frames, L.dx, L.dt);
            const auto W = static_cast<std::ptrdiff_t>(L.width);
            const auto H = static_cast<std::ptrdiff_t>(L.height);
            Stencil sl{L, W, H};
            Stencil st{Lt, W, H};
            for (std::size_t f = 0; f < L.frames; ++f)
                for (std::ptrdiff_t y = 0; y < H; ++y)
                    for (std::ptrdiff_t x = 0; x < W; ++x) {
                        const double lxx = sl.xx(x, y, f);
                        const double lyy = sl.yy(x, y, f);
                        const double lxy = sl.xy(x, y, f);
                        const double lxt = st.x1(x, y, f);
                        const double lyt = st.y1(x, y, f);
                        const double ltt = Ltt(static_cast<std::size_t>(x), static_cast<std::size_t>(y), f);
                        const double det = lxx * lyy * ltt + 2.0 * lxy * lxt * lyt - lxx * lyt * lyt - lyy * lxt * lxt -
                                           ltt * lxy * lxy;
                        D(static_cast<std::size_t>(x), static_cast<std::size_t>(y), f) = norm * det;
                    }
            out[j].push_back(std::move(D));
        }
    }
    return out;
}

JointScaleEstimate joint_scale_at(const ScaleField& field, const std::vector<double>& s_list, const std::vector<double>& tau,
                                  ScaleCoordinate temporal_coord, std::size_t x, std::size_t y, Polarity polarity) {
    if (field.empty() || field.front().empty()) throw UsageError("joint_scale_at: empty field");
    const double sign = polarity == Polarity::Max ? 1.0 : -1.0;
    const std::size_t J = field.size();
    const std::size_t K = field.front().size();
    std::vector<double> m(J * K, -HUGE_VAL);
    std::vector<std::size_t> arg(J * K, 0);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t k = 0; k < K; ++k) {
            const VideoVolume& v = field[j][k];
            for (std::size_t f = 0; f < v.frames; ++f) {
                const double val = sign * v(x, y, f);
                if (val > m[j * K + k]) {
                    m[j * K + k] = val;
                    arg[j * K + k] = f;
                }
            }
        }
    std::size_t best = 0;
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] > m[best]) best = i;
    JointScaleEstimate e;
    e.spatial_index = best / K;
    e.temporal_index = best % K;
    e.frame = arg[best];
    e.value = sign * m[best];
    const std::size_t j = e.spatial_index;
    const std::size_t k = e.temporal_index;
    double oj = 0.0;
    double ok = 0.0;
    if (j > 0 && j + 1 < J) oj = interpolation_offset(m[(j - 1) * K + k], m[best], m[(j + 1) * K + k]);
    if (k > 0 && k + 1 < K) ok = interpolation_offset(m[j * K + k - 1], m[best], m[j * K + k + 1]);
    e.s_hat = interpolate_scale(oj, j, s_list, ScaleCoordinate::LogTau);
    e.tau_hat = interpolate_scale(ok, k, tau, temporal_coord);
    return e;
}

namespace {

void check_blob_extent(std::size_t width, std::size_t height, double dx, double s0) {
    const double half = 0.5 * static_cast<double>(std::min(width, height) - 1) * dx;
    const double inside = std::erf(half / std::sqrt(2.0 * s0));
    if (1.0 - inside * inside > 1e-4) throw DomainError("blob generator: spatial truncation clips more than 1e-4 of the mass");
}

VideoVolume separable_blob(std::size_t width, std::size_t height, std::size_t frames, double dx, double dt, double s0,
                           const std::vector<double>& temporal) {
    VideoVolume v(width, height, frames, dx, dt);
    const double cx = 0.5 * static_cast<double>(width - 1);
    const double cy = 0.5 * static_cast<double>(height - 1);
    for (std::size_t y = 0; y < height; ++y)
        for (std::size_t x = 0; x < width; ++x) {
            const double rx = (static_cast<double>(x) - cx) * dx;
            const double ry = (static_cast<double>(y) - cy) * dx;
            const double g = std::exp(-(rx * rx + ry * ry) / (2.0 * s0)) / (2.0 * std::numbers::pi * s0);
            for (std::size_t f = 0; f < frames; ++f) v(x, y, f) = g * temporal[f];
        }
    return v;
}

}  // namespace

VideoVolume blink_generator(std::size_t width, std::size_t height, std::size_t frames, double dx, double dt, double s0,
                            int K0, double mu) {
    if (!(s0 > 0.0) || K0 < 1 || !(mu > 0.0)) throw DomainError("blink_generator: need s0 > 0, K0 >= 1, mu > 0");
    check_blob_extent(width, height, dx, s0);
    const double t_end = dt * static_cast<double>(frames);
    if (1.0 - boost::math::gamma_p(static_cast<double>(K0), t_end / mu) > 1e-4)
        throw DomainError("blink_generator: temporal truncation clips more than 1e-4 of the mass");
    std::vector<double> u(frames);
    for (std::size_t f = 0; f < frames; ++f) u[f] = eval_gamma_kernel(dt * static_cast<double>(f), mu, K0, 0);
    return separable_blob(width, height, frames, dx, dt, s0, u);
}

VideoVolume onset_blob_generator(std::size_t width, std::size_t height, std::size_t frames, double dx, double dt,
                                 double s0, int K0, double mu) {
    if (!(s0 > 0.0) || K0 < 1 || !(mu > 0.0)) throw DomainError("onset_blob_generator: need s0 > 0, K0 >= 1, mu > 0");
    check_blob_extent(width, height, dx, s0);
    std::vector<double> u(frames);
    double acc = 0.0;
    for (std::size_t f = 0; f < frames; ++f) {
        acc += eval_gamma_kernel(dt * static_cast<double>(f), mu, K0, 0) * dt;
        u[f] = acc;
    }
    return separable_blob(width, height, frames, dx, dt, s0, u);
}

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char bytes[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) throw DomainError("read_raw_volume: truncated input");
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

}  // namespace

void write_raw_volume(std::ostream& out, const VideoVolume& v) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v.width));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v.height));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(v.frames));
    put_le<double>(out, v.dx);
    put_le<double>(out, v.dt);
    for (double d : v.data) put_le<float>(out, static_cast<float>(d));
}

VideoVolume read_raw_volume(std::istream& in) {
    const auto w = get_le<std::uint32_t>(in);
    const auto h = get_le<std::uint32_t>(in);
    const auto f = get_le<std::uint32_t>(in);
    const double dx = get_le<double>(in);
    const double dt = get_le<double>(in);
    const std::uint64_t count = std::uint64_t{w} * h * f;
    if (count > (std::uint64_t{1} << 31)) throw DomainError("read_raw_volume: volume too large");
    VideoVolume v(w, h, f, dx, dt);
    for (double& d : v.data) d = get_le<float>(in);
    return v;
}

void write_raw_volume(const std::string& path, const VideoVolume& v) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("write_raw_volume: cannot open " + path);
    write_raw_volume(out, v);
}

VideoVolume read_raw_volume(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("read_raw_volume: cannot open " + path);
    return read_raw_volume(in);
}

}  // namespace tempscale
