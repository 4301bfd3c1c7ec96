#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "tempscale/pipeline.hpp"

namespace tempscale {

struct StreamEvent {
    ScaleSpaceExtremum extremum;
    // Provisional on detection; confirmed once the adjacent-level walks have completed.
    bool confirmed = false;
};

/// Online counterpart of run_pipeline for causal families; confirmed events equal the batch extrema.
/// Quasi quadrature and scale profiles are not available here.
class StreamDetector {
public:
    explicit StreamDetector(const PipelineConfig& config);

    std::vector<StreamEvent> push(double sample);
    // Resolves pending extrema as if the signal ended here.
    std::vector<StreamEvent> finish();

    std::size_t samples_seen() const { return count_; }
    std::size_t pending() const { return pending_.size(); }
    // Largest forward walk, in samples, an event can wait for.
    std::size_t max_latency() const;

private:
    double value(std::size_t k, std::size_t i) const { return buf_[k][i - base_]; }
    bool available(std::size_t i) const { return !buf_.empty() && i >= base_ && i - base_ < buf_[0].size(); }
    bool forward_walk_done(std::size_t k, std::size_t i, double sign) const;
    bool resolvable(const ScaleSpaceExtremum& e) const;
    ScaleSpaceExtremum resolve(const ScaleSpaceExtremum& e) const;
    void detect_at(std::size_t i, std::vector<StreamEvent>& out);
    void drain(bool at_end, std::vector<StreamEvent>& out);
    void trim();

    PipelineConfig config_;
    IntegratorState state_;
    std::vector<double> tau_;
    std::vector<double> delay_;
    std::vector<double> prefactor_;
    std::vector<std::size_t> bounds_;
    std::size_t order_ = 2;
    std::size_t horizon_ = 0;

    std::vector<double> prev1_;
    std::vector<double> prev2_;
    std::vector<std::deque<double>> buf_;
    std::size_t base_ = 0;
    std::size_t count_ = 0;
    std::vector<ScaleSpaceExtremum> pending_;
};

}  // namespace tempscale
