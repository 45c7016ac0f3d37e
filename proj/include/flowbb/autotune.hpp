#ifndef FLOWBB_AUTOTUNE_HPP
#define FLOWBB_AUTOTUNE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowbb/backend.hpp"

namespace flowbb {

enum class TunerPhase { doubling, refining, fixed };

inline const char* to_string(TunerPhase phase) {
    switch (phase) {
        case TunerPhase::doubling: return "doubling";
        case TunerPhase::refining: return "refining";
        case TunerPhase::fixed: return "fixed";
    }
    return "?";
}

/// Runtime batch-size tuner. Starts from grain x base_units and doubles the
/// unit count every measurement window while it fits under max_batch, then
/// probes geometric midpoints around the best size seen, then stays fixed on
/// the overall argmax. Efficiency is throughput: nodes bounded per second of
/// wall time over the window. A pure state machine; the caller supplies all
/// timing, so identical observation sequences give identical decisions.
class Tuner {
public:
    /// Called when a window closes: (window index, batch size measured,
    /// throughput, decision taken).
    using Trace = std::function<void(int, int, double, const std::string&)>;

    Tuner(BackendDescriptor descriptor, int window, int probes_per_side = 2)
        : descriptor_(descriptor), window_(window), probes_per_side_(probes_per_side),
          units_(descriptor.base_units) {
        if (window < 1) throw std::invalid_argument("measurement window must be >= 1");
        if (probes_per_side < 0) throw std::invalid_argument("probe count must be >= 0");
        if (descriptor.grain < 1 || descriptor.base_units < 1
            || descriptor.max_batch < descriptor.grain * descriptor.base_units)
            throw std::invalid_argument("invalid backend descriptor");
    }

    void set_trace(Trace trace) { trace_ = std::move(trace); }

    TunerPhase phase() const { return phase_; }
    int best_batch() const { return best_batch_; }
    double best_throughput() const { return best_throughput_; }

    /// Batch size the search loop should aim for in the current iteration.
    int target() const {
        switch (phase_) {
            case TunerPhase::doubling: return descriptor_.grain * units_;
            case TunerPhase::refining: return probes_.front();
            case TunerPhase::fixed: return best_batch_;
        }
        return best_batch_;
    }

    /// Records one iteration's work. Every `window` iterations the window
    /// closes and the tuner advances.
    void observe(std::int64_t nodes_bounded, double elapsed_seconds) {
        if (elapsed_seconds <= 0.0) throw std::invalid_argument("elapsed time must be positive");
        if (phase_ == TunerPhase::fixed) return;
        window_nodes_ += nodes_bounded;
        window_time_ += elapsed_seconds;
        if (++iter_ % window_ != 0) return;

        int measured = target();
        double throughput = static_cast<double>(window_nodes_) / window_time_;
        visited_.insert(measured);
        if (throughput > best_throughput_) {
            best_throughput_ = throughput;
            best_batch_ = measured;
        }
        window_nodes_ = 0;
        window_time_ = 0.0;
        advance(measured, throughput);
    }

private:
    void advance(int measured, double throughput) {
        std::string decision;
        if (phase_ == TunerPhase::doubling) {
            if (static_cast<std::int64_t>(descriptor_.grain) * units_ * 2 <= descriptor_.max_batch) {
                units_ *= 2;
                decision = "double to " + std::to_string(descriptor_.grain * units_);
            } else {
                build_probes();
                if (probes_.empty()) {
                    phase_ = TunerPhase::fixed;
                    decision = "fix at " + std::to_string(best_batch_);
                } else {
                    phase_ = TunerPhase::refining;
                    decision = "refine at " + std::to_string(probes_.front());
                }
            }
        } else if (phase_ == TunerPhase::refining) {
            probes_.pop_front();
            // Drop probes made redundant by a moving best.
            while (!probes_.empty() && visited_.count(probes_.front())) probes_.pop_front();
            if (probes_.empty()) {
                phase_ = TunerPhase::fixed;
                decision = "fix at " + std::to_string(best_batch_);
            } else {
                decision = "refine at " + std::to_string(probes_.front());
            }
        }
        if (trace_) trace_(window_index_, measured, throughput, decision);
        ++window_index_;
    }

    // Geometric midpoints around the best size: best * 2^(+-i / (2 * probes)),
    // rounded down to a grain multiple, clamped to [grain, max_batch], skipping
    // sizes already measured. Below probes first, ascending, then above.
    void build_probes() {
        std::vector<int> candidates;
        for (int i = probes_per_side_; i >= 1; --i)
            candidates.push_back(scale(best_batch_, -i));
        for (int i = 1; i <= probes_per_side_; ++i)
            candidates.push_back(scale(best_batch_, i));
        for (int c : candidates)
            if (!visited_.count(c) && std::find(probes_.begin(), probes_.end(), c) == probes_.end())
                probes_.push_back(c);
    }

    int scale(int base, int step) const {
        double factor = std::pow(2.0, static_cast<double>(step) / (2.0 * probes_per_side_));
        auto raw = static_cast<std::int64_t>(std::floor(base * factor));
        raw = std::clamp<std::int64_t>(raw, descriptor_.grain, descriptor_.max_batch);
        raw -= raw % descriptor_.grain;
        return static_cast<int>(std::max<std::int64_t>(raw, descriptor_.grain));
    }

    BackendDescriptor descriptor_;
    int window_;
    int probes_per_side_;
    TunerPhase phase_ = TunerPhase::doubling;
    int units_;
    std::int64_t iter_ = 0;
    int window_index_ = 0;
    std::int64_t window_nodes_ = 0;
    double window_time_ = 0.0;
    int best_batch_ = 0;
    double best_throughput_ = -1.0;
    std::deque<int> probes_;
    std::set<int> visited_;
    Trace trace_;
};

}  // namespace flowbb

#endif  // FLOWBB_AUTOTUNE_HPP
