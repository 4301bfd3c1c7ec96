#include "tempscale/selection.hpp"

#include <algorithm>
#include <cmath>

#include "tempscale/errors.hpp"

namespace tempscale {

namespace {

bool is_extremum(const Plane& p, std::size_t k, std::size_t i, double sign) {
    const double v = sign * p(k, i);
    bool strictly_above_one = false;
    for (std::size_t kk = k - 1; kk <= k + 1; ++kk) {
        for (std::size_t ii = i - 1; ii <= i + 1; ++ii) {
            if (kk == k && ii == i) continue;
            const double n = sign * p(kk, ii);
            const bool earlier = ii < i || (ii == i && kk < k);
            if (earlier ? !(v > n) : !(v >= n)) return false;
            if (v > n) strictly_above_one = true;
        }
    }
    return strictly_above_one;
}

double polarity_sign(Polarity p) { return p == Polarity::Max ? 1.0 : -1.0; }

}  // namespace

std::vector<ScaleSpaceExtremum> detect_extrema(const Plane& plane, const DetectOptions& options) {
    std::vector<ScaleSpaceExtremum> out;
    if (plane.levels() < 3 || plane.samples() < 3) return out;
    for (std::size_t i = 1; i + 1 < plane.samples(); ++i) {
        for (std::size_t k = 1; k + 1 < plane.levels(); ++k) {
            const double v = plane(k, i);
            if (std::abs(v) < options.min_magnitude) continue;
            Polarity pol;
            if (options.maxima && is_extremum(plane, k, i, 1.0)) {
                pol = Polarity::Max;
            } else if (options.minima && is_extremum(plane, k, i, -1.0)) {
                pol = Polarity::Min;
            } else {
                continue;
            }
            ScaleSpaceExtremum e;
            e.time_index = i;
            e.level_index = k;
            e.polarity = pol;
            e.value = v;
            out.push_back(e);
        }
    }
    return out;
}

double interpolation_offset(double ym, double y0, double yp) {
    const double a = yp - 2.0 * y0 + ym;
    const double b = (yp - ym) / 2.0;
    if (a == 0.0) return 0.0;
    return std::clamp(-b / a, -0.5, 0.5);
}

double interpolate_scale(double offset, std::size_t level, const std::vector<double>& tau, ScaleCoordinate coord) {
    if (level >= tau.size()) throw DomainError("interpolate_scale: level out of range");
    if (offset == 0.0 || tau.size() == 1) return tau[level];
    std::size_t lo = level;
    std::size_t hi = level;
    if (offset > 0.0) {
        hi = level + 1 < tau.size() ? level + 1 : level;
        lo = hi == level ? level - 1 : level;
    } else {
        lo = level > 0 ? level - 1 : level;
        hi = lo == level ? level + 1 : level;
    }
    if (coord == ScaleCoordinate::LogTau) {
        const double step = std::log(tau[hi]) - std::log(tau[lo]);
        return tau[level] * std::exp(offset * step);
    }
    return tau[level] + offset * (tau[hi] - tau[lo]);
}

std::size_t walk_to_temporal_max(std::span<const double> row, std::size_t i, int first_step, double sign,
                                 std::size_t bound) {
    std::size_t j = i;
    std::size_t steps = 0;
    if (first_step < 0) {
        while (steps < bound && j > 0 && sign * row[j - 1] > sign * row[j]) {
            --j;
            ++steps;
        }
    } else {
        while (steps < bound && j + 1 < row.size() && sign * row[j + 1] > sign * row[j]) {
            ++j;
            ++steps;
        }
    }
    return j;
}

namespace {

std::size_t walk_both(std::span<const double> row, std::size_t i, int first_step, double sign, std::size_t bound) {
    const std::size_t j = walk_to_temporal_max(row, i, first_step, sign, bound);
    if (j != i) return j;
    return walk_to_temporal_max(row, i, -first_step, sign, bound);
}

}  // namespace

std::vector<std::size_t> walk_bounds(const std::vector<double>& delay, double dt) {
    std::vector<std::size_t> out(delay.size());
    for (std::size_t k = 0; k < delay.size(); ++k)
        out[k] = static_cast<std::size_t>(std::ceil(8.0 * std::max(delay[k], 0.0) / dt));
    return out;
}

void refine_scales(std::vector<ScaleSpaceExtremum>& extrema, const Plane& plane, const std::vector<double>& tau,
                   double dt, ScaleCoordinate coord, const std::vector<std::size_t>& walk_bound,
                   std::size_t index_origin) {
    for (auto& e : extrema) {
        const std::size_t k = e.level_index;
        const std::size_t i = e.time_index;
        const double s = polarity_sign(e.polarity);
        e.offset = 0.0;
        double shift = 0.0;
        if (k >= 1 && k + 1 < plane.levels()) {
            const std::size_t jm = walk_both(plane.row(k - 1), i, -1, s, walk_bound.at(k - 1));
            const std::size_t jp = walk_both(plane.row(k + 1), i, +1, s, walk_bound.at(k + 1));
            const double ym = s * plane(k - 1, jm);
            const double y0 = s * plane(k, i);
            const double yp = s * plane(k + 1, jp);
            const double a = yp - 2.0 * y0 + ym;
            if (a < 0.0) {
                e.offset = interpolation_offset(ym, y0, yp);
            } else if (yp != ym) {
                e.offset = yp > ym ? 0.5 : -0.5;
            }
            const std::size_t j = e.offset > 0.0 ? jp : jm;
            shift = std::abs(e.offset) * (static_cast<double>(j) - static_cast<double>(i));
        }
        e.tau_hat = interpolate_scale(e.offset, k, tau, coord);
        e.sigma_hat = std::sqrt(e.tau_hat);
        e.time = dt * static_cast<double>(i + index_origin);
        e.ridge_time = dt * (static_cast<double>(i + index_origin) + shift);
        e.delay_compensated_time = e.ridge_time;
    }
}

void post_filter(std::vector<ScaleSpaceExtremum>& extrema, const Plane& plane,
                 const std::vector<std::size_t>& walk_bound) {
    for (auto& e : extrema) {
        const std::size_t k = e.level_index;
        const std::size_t i = e.time_index;
        const double s = polarity_sign(e.polarity);
        const double v = s * plane(k, i);
        if (k >= 1) {
            const std::size_t j = walk_to_temporal_max(plane.row(k - 1), i, -1, s, walk_bound.at(k - 1));
            if (s * plane(k - 1, j) > v) e.suppressed = true;
        }
        if (k + 1 < plane.levels()) {
            const std::size_t j = walk_to_temporal_max(plane.row(k + 1), i, +1, s, walk_bound.at(k + 1));
            if (s * plane(k + 1, j) > v) e.suppressed = true;
        }
    }
}

double interpolated_delay(const ScaleSpaceExtremum& e, const std::vector<double>& delay) {
    const std::size_t k = e.level_index;
    if (k >= delay.size()) throw DomainError("compensate_delay: level out of range");
    const double d0 = delay[k];
    if (e.offset > 0.0 && k + 1 < delay.size()) return d0 + e.offset * (delay[k + 1] - d0);
    if (e.offset < 0.0 && k >= 1) return d0 + e.offset * (d0 - delay[k - 1]);
    return d0;
}

double compensate_delay(const ScaleSpaceExtremum& e, const std::vector<double>& delay) {
    return e.ridge_time - interpolated_delay(e, delay);
}

QuasiQuadratureSpec QuasiQuadratureSpec::from_gamma(double Gamma) {
    if (!(Gamma < 1.0) || !std::isfinite(Gamma)) throw DomainError("quasi quadrature: Gamma must be < 1");
    return {Gamma, 1.0 / std::sqrt((1.0 - Gamma) * (2.0 - Gamma))};
}

Plane quasi_quadrature(const Plane& Lz, const Plane& Lzz, const QuasiQuadratureSpec& spec, double dt) {
    if (!(spec.Gamma < 1.0)) throw DomainError("quasi_quadrature: Gamma must be < 1");
    if (Lz.levels() != Lzz.levels() || Lz.samples() != Lzz.samples())
        throw UsageError("quasi_quadrature: plane shapes differ");
    Plane Q(Lz.levels(), Lz.samples());
    for (std::size_t i = 0; i < Lz.samples(); ++i) {
        const double t = i == 0 ? dt : dt * static_cast<double>(i);
        const double w = spec.Gamma == 0.0 ? 1.0 : std::pow(t, -spec.Gamma);
        for (std::size_t k = 0; k < Lz.levels(); ++k) {
            const double a = Lz(k, i);
            const double b = Lzz(k, i);
            Q(k, i) = (a * a + spec.C * b * b) * w;
        }
    }
    return Q;
}

ScaleProfile scale_profile(const Plane& map, const std::vector<double>& tau, ScaleCoordinate coord,
                           std::size_t first_sample) {
    if (tau.size() != map.levels()) throw UsageError("scale_profile: tau list does not match plane levels");
    ScaleProfile prof;
    prof.tau = tau;
    prof.values.assign(map.levels(), 0.0);
    for (std::size_t k = 0; k < map.levels(); ++k) {
        const auto row = map.row(k);
        double s = 0.0;
        for (std::size_t i = first_sample; i < row.size(); ++i) s += row[i];
        prof.values[k] = s;
    }
    const auto& v = prof.values;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        if (v[k] > v[k - 1] && v[k] >= v[k + 1]) {
            ProfilePeak p;
            p.level = k;
            p.offset = interpolation_offset(v[k - 1], v[k], v[k + 1]);
            p.tau_hat = interpolate_scale(p.offset, k, tau, coord);
            p.sigma_hat = std::sqrt(p.tau_hat);
            p.value = v[k];
            prof.peaks.push_back(p);
        }
    }
    return prof;
}

}  // namespace tempscale
