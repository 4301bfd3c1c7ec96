#include "tempscale/stream.hpp"

#include <algorithm>
#include <cmath>

#include "tempscale/errors.hpp"

namespace tempscale {

StreamDetector::StreamDetector(const PipelineConfig& config) : config_(config) {
    validate(config_);
    if (config_.family == KernelFamily::Gaussian) throw UsageError("streaming needs a time-causal kernel family");
    if (config_.quasi_quadrature || config_.scale_profile)
        throw UsageError("quasi quadrature and scale profiles are batch-only outputs");
    const auto ladder = pipeline_ladder(config_);
    state_ = IntegratorState(ladder, config_.dt, config_.discretization);
    tau_ = ladder.tau;
    delay_ = measure_delays(ladder, config_.dt, config_.discretization);
    TemporalScaleSpace view;
    view.ladder = ladder;
    view.tau = tau_;
    view.dt = config_.dt;
    view.discretization = config_.discretization;
    prefactor_ = level_prefactors(view, config_.normalization);
    bounds_ = walk_bounds(delay_, config_.dt);
    order_ = static_cast<std::size_t>(config_.normalization.order);
    horizon_ = bounds_.empty() ? 0 : *std::max_element(bounds_.begin(), bounds_.end());
    prev1_.assign(tau_.size(), 0.0);
    prev2_.assign(tau_.size(), 0.0);
    buf_.assign(tau_.size(), {});
}

std::size_t StreamDetector::max_latency() const { return horizon_ + 1; }

std::vector<StreamEvent> StreamDetector::push(double sample) {
    std::vector<StreamEvent> out;
    const std::size_t i = count_;
    const auto L = stream_step(state_, sample);
    const double s = order_ == 1 ? 1.0 / config_.dt : 1.0 / (config_.dt * config_.dt);
    if (i >= order_) {
        for (std::size_t k = 0; k < L.size(); ++k) {
            double d = order_ == 1 ? (L[k] - prev1_[k]) * s : (L[k] - 2.0 * prev1_[k] + prev2_[k]) * s;
            d *= prefactor_[k];
            if (config_.sign != 1.0) d *= config_.sign;
            const std::size_t copies = i == order_ ? order_ + 1 : 1;
            for (std::size_t c = 0; c < copies; ++c) buf_[k].push_back(d);
        }
    }
    prev2_ = prev1_;
    prev1_ = L;
    ++count_;
    if (i >= order_ && i >= 2) detect_at(i - 1, out);
    drain(false, out);
    trim();
    return out;
}

std::vector<StreamEvent> StreamDetector::finish() {
    std::vector<StreamEvent> out;
    drain(true, out);
    return out;
}

void StreamDetector::detect_at(std::size_t i, std::vector<StreamEvent>& out) {
    const std::size_t levels = tau_.size();
    Plane local(levels, 3);
    for (std::size_t k = 0; k < levels; ++k)
        for (std::size_t j = 0; j < 3; ++j) local(k, j) = value(k, i - 1 + j);
    DetectOptions opt;
    opt.maxima = config_.polarity != PolarityFilter::Min;
    opt.minima = config_.polarity != PolarityFilter::Max;
    opt.min_magnitude = config_.min_magnitude;
    for (auto e : detect_extrema(local, opt)) {
        e.time_index = i;
        e.time = config_.dt * static_cast<double>(i);
        e.tau_hat = tau_[e.level_index];
        e.sigma_hat = std::sqrt(e.tau_hat);
        e.ridge_time = e.time;
        e.delay_compensated_time = e.time;
        out.push_back({e, false});
        pending_.push_back(e);
    }
}

bool StreamDetector::forward_walk_done(std::size_t k, std::size_t i, double sign) const {
    std::size_t j = i;
    for (std::size_t steps = 0; steps < bounds_[k]; ++steps) {
        if (!available(j + 1)) return false;
        if (sign * value(k, j + 1) > sign * value(k, j)) {
            ++j;
        } else {
            return true;
        }
    }
    return true;
}

bool StreamDetector::resolvable(const ScaleSpaceExtremum& e) const {
    const std::size_t k = e.level_index;
    const std::size_t i = e.time_index;
    const double sign = e.polarity == Polarity::Max ? 1.0 : -1.0;
    if (!forward_walk_done(k + 1, i, sign)) return false;
    const bool moved_back = bounds_[k - 1] > 0 && i > 0 && sign * value(k - 1, i - 1) > sign * value(k - 1, i);
    return moved_back || forward_walk_done(k - 1, i, sign);
}

ScaleSpaceExtremum StreamDetector::resolve(const ScaleSpaceExtremum& e) const {
    const std::size_t k = e.level_index;
    const std::size_t i = e.time_index;
    const std::size_t reach = std::max(bounds_[k - 1], bounds_[k + 1]) + 1;
    const std::size_t lo = i > base_ + reach ? i - reach : base_;
    const std::size_t hi = base_ + buf_[0].size();
    Plane local(3, hi - lo);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t j = lo; j < hi; ++j) local(r, j - lo) = value(k - 1 + r, j);
    const std::vector<double> tau3{tau_[k - 1], tau_[k], tau_[k + 1]};
    const std::vector<std::size_t> bounds3{bounds_[k - 1], bounds_[k], bounds_[k + 1]};
    ScaleSpaceExtremum l = e;
    l.level_index = 1;
    l.time_index = i - lo;
    std::vector<ScaleSpaceExtremum> one{l};
    refine_scales(one, local, tau3, config_.dt, pipeline_coordinate(config_), bounds3, lo);
    if (config_.post_filter) post_filter(one, local, bounds3);
    ScaleSpaceExtremum r = one.front();
    r.level_index = k;
    r.time_index = i;
    r.delay_compensated_time = config_.delay_compensation ? compensate_delay(r, delay_) : r.ridge_time;
    return r;
}

void StreamDetector::drain(bool at_end, std::vector<StreamEvent>& out) {
    std::vector<ScaleSpaceExtremum> keep;
    for (const auto& e : pending_) {
        if (at_end || resolvable(e)) {
            out.push_back({resolve(e), true});
        } else {
            keep.push_back(e);
        }
    }
    pending_ = std::move(keep);
}

void StreamDetector::trim() {
    if (buf_.empty() || buf_[0].empty()) return;
    std::size_t anchor = count_ > 2 ? count_ - 2 : 0;
    for (const auto& e : pending_) anchor = std::min(anchor, e.time_index);
    const std::size_t margin = horizon_ + 4;
    if (anchor <= base_ + margin) return;
    const std::size_t keep_from = anchor - margin;
    const std::size_t drop = std::min(keep_from - base_, buf_[0].size());
    for (auto& b : buf_) b.erase(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(drop));
    base_ += drop;
}

}  // namespace tempscale
