#ifndef FLOWBB_BACKEND_HPP
#define FLOWBB_BACKEND_HPP

#include <algorithm>
#include <cstdlib>
#include <future>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "flowbb/bound.hpp"
#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"

namespace flowbb {

/// A backend fault, carrying the index of the backend that failed.
struct BackendError : std::runtime_error {
    BackendError(int backend, const std::string& what)
        : std::runtime_error("backend " + std::to_string(backend) + ": " + what),
          backend(backend) {}
    int backend;
};

/// Capacity description of a bounding backend: preferred batch-size multiple,
/// initial parallel-unit count, and the largest admissible batch.
struct BackendDescriptor {
    int grain = 256;
    int base_units = 1;
    int max_batch = 65536;
};

/// Parallel units reported by the host, capped by FLOWBB_MAX_CORES when set.
inline int detect_units() {
    int units = static_cast<int>(std::thread::hardware_concurrency());
    if (units < 1) units = 1;
    if (const char* cap = std::getenv("FLOWBB_MAX_CORES")) {
        int limit = std::atoi(cap);
        if (limit >= 1) units = std::min(units, limit);
    }
    return units;
}

inline BackendDescriptor default_descriptor() {
    return BackendDescriptor{256, detect_units(), 65536};
}

/// A bounding backend running on the host CPU. The descriptor is fixed at
/// construction.
class CpuBackend {
public:
    CpuBackend() : descriptor_(default_descriptor()) {}
    explicit CpuBackend(BackendDescriptor descriptor) : descriptor_(descriptor) {
        if (descriptor_.grain < 1 || descriptor_.base_units < 1
            || descriptor_.max_batch < descriptor_.grain * descriptor_.base_units)
            throw std::invalid_argument("invalid backend descriptor");
    }

    const BackendDescriptor& descriptor() const { return descriptor_; }

    std::vector<int> evaluate(const Instance& inst, std::span<const Node> nodes) const {
        return evaluate_batch(inst, nodes);
    }

private:
    BackendDescriptor descriptor_;
};

/// Splits `total` positions into `k` contiguous slices whose sizes differ by
/// at most one; the first `total % k` slices take the extra element.
inline std::vector<std::pair<std::size_t, std::size_t>> split_slices(std::size_t total, int k) {
    if (k < 1) throw std::invalid_argument("backend count must be positive");
    std::vector<std::pair<std::size_t, std::size_t>> slices;
    slices.reserve(k);
    std::size_t base = total / k, extra = total % k, offset = 0;
    for (int i = 0; i < k; ++i) {
        std::size_t len = base + (static_cast<std::size_t>(i) < extra ? 1 : 0);
        slices.emplace_back(offset, len);
        offset += len;
    }
    return slices;
}

/// Concatenates per-slice bound sequences back into batch order. Each slice
/// result must match its slice length; a mismatch signals a backend fault.
inline std::vector<int> merge_slices(const std::vector<std::vector<int>>& slice_results,
                                     const std::vector<std::pair<std::size_t, std::size_t>>& slices) {
    std::vector<int> out;
    std::size_t total = 0;
    for (const auto& [offset, len] : slices) total += len;
    out.reserve(total);
    for (std::size_t i = 0; i < slice_results.size(); ++i) {
        if (slice_results[i].size() != slices[i].second)
            throw BackendError(static_cast<int>(i), "slice result length mismatch");
        out.insert(out.end(), slice_results[i].begin(), slice_results[i].end());
    }
    return out;
}

/// Fork-join evaluation across a set of backends: split the batch, bound each
/// slice concurrently, merge in slice order. Bit-identical to sequential
/// evaluation for any backend count; a failing backend fails the whole round.
template <class Backend>
std::vector<int> evaluate_multi(std::span<const Backend> backends, const Instance& inst,
                                std::span<const Node> batch) {
    if (backends.empty()) throw std::invalid_argument("empty backend set");
    if (batch.empty()) return {};
    int k = static_cast<int>(backends.size());
    if (k == 1) return backends[0].evaluate(inst, batch);

    auto slices = split_slices(batch.size(), k);
    std::vector<std::future<std::vector<int>>> futures;
    futures.reserve(k);
    for (int i = 0; i < k; ++i) {
        auto [offset, len] = slices[i];
        futures.push_back(std::async(std::launch::async,
                                     [&backends, &inst, batch, i, offset = offset, len = len] {
                                         return backends[i].evaluate(inst, batch.subspan(offset, len));
                                     }));
    }
    std::vector<std::vector<int>> slice_results(k);
    int failed = -1;
    std::string failure;
    for (int i = 0; i < k; ++i) {
        try {
            slice_results[i] = futures[i].get();
        } catch (const std::exception& e) {
            if (failed < 0) {
                failed = i;
                failure = e.what();
            }
        }
    }
    if (failed >= 0) throw BackendError(failed, failure);
    return merge_slices(slice_results, slices);
}

/// An ordered set of identical CPU backends; the ordering fixes slice
/// assignment for a run.
class BackendSet {
public:
    explicit BackendSet(int count, BackendDescriptor descriptor = default_descriptor()) {
        if (count < 1) throw std::invalid_argument("backend count must be positive");
        backends_.assign(count, CpuBackend(descriptor));
    }

    int size() const { return static_cast<int>(backends_.size()); }
    const BackendDescriptor& descriptor() const { return backends_.front().descriptor(); }

    std::vector<int> evaluate(const Instance& inst, std::span<const Node> batch) const {
        return evaluate_multi<CpuBackend>(backends_, inst, batch);
    }

private:
    std::vector<CpuBackend> backends_;
};

}  // namespace flowbb

#endif  // FLOWBB_BACKEND_HPP
