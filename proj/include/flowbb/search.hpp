#ifndef FLOWBB_SEARCH_HPP
#define FLOWBB_SEARCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flowbb/autotune.hpp"
#include "flowbb/backend.hpp"
#include "flowbb/bound.hpp"
#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"
#include "flowbb/pending.hpp"

namespace flowbb {

struct SearchStats {
    std::int64_t branched = 0;
    std::int64_t bounded = 0;
    std::int64_t pruned = 0;
    double elapsed_seconds = 0.0;
};

struct Solution {
    int optimum = 0;
    std::optional<Permutation> schedule;
    SearchStats stats;

    /// False when the search was infeasible under the supplied upper bound.
    bool found() const { return schedule.has_value(); }
};

/// One child per unscheduled job, ascending job index. Children reaching
/// depth n-1 are completed with the unique remaining job, so every emitted
/// node is either internal or a full permutation.
inline std::vector<Node> branch(const Instance& inst, const Node& node) {
    int n = inst.jobs();
    if (node.depth() >= n) throw std::logic_error("cannot branch a complete node");
    std::vector<Node> children;
    children.reserve(n - node.depth());
    for (int j = 0; j < n; ++j) {
        if (node.scheduled.test(j)) continue;
        Node child = node.child(inst, j);
        if (child.depth() == n - 1) {
            for (int last = 0; last < n; ++last) {
                if (!child.scheduled.test(last)) {
                    child = child.child(inst, last);
                    break;
                }
            }
        }
        children.push_back(std::move(child));
    }
    return children;
}

/// Pops deepest pending nodes and branches them until the buffer holds at
/// least `target` children or pending runs out. May overshoot by one
/// branching's worth of children.
inline std::vector<Node> fill_buffer(const Instance& inst, PendingTree& pending,
                                     std::size_t target, std::int64_t* branched = nullptr) {
    std::vector<Node> buffer;
    while (buffer.size() < target && !pending.empty()) {
        Node node = pending.pop();
        if (branched) ++*branched;
        for (Node& child : branch(inst, node)) buffer.push_back(std::move(child));
    }
    return buffer;
}

struct IntegrateCounts {
    std::int64_t inserted = 0;
    std::int64_t pruned = 0;
    std::int64_t leaves = 0;
};

/// Folds a bounded batch back into the search state, in batch order: leaves
/// may improve the incumbent; internal nodes with lb < incumbent go to
/// pending, the rest are eliminated. Improvement must be strict.
inline IntegrateCounts integrate(const Instance& inst, std::vector<Node>& nodes,
                                 const std::vector<int>& bounds, PendingTree& pending,
                                 Incumbent& incumbent) {
    if (nodes.size() != bounds.size())
        throw std::invalid_argument("batch/bounds length mismatch");
    IntegrateCounts counts;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Node& node = nodes[i];
        node.lb = bounds[i];
        if (node.depth() == inst.jobs()) {
            ++counts.leaves;
            if (node.lb < incumbent.value) {
                incumbent.value = node.lb;
                incumbent.schedule = node.prefix;
            }
        } else if (node.lb < incumbent.value) {
            ++counts.inserted;
            pending.push(std::move(node));
        } else {
            ++counts.pruned;
        }
    }
    return counts;
}

struct SolveConfig {
    std::optional<int> initial_ub;
    int backends = 1;
    bool autotune = false;
    std::optional<int> fixed_batch;
    std::uint32_t seed = 0;
    int window = 5;
    int probes = 2;
    BackendDescriptor descriptor = default_descriptor();
    Tuner::Trace tuner_trace;
};

/// Exact B&B: synchronous rounds of fill / batched bounding / integration,
/// with deepest-first LIFO selection. The control thread owns all search
/// state; only bounding is parallel.
inline Solution solve(const Instance& inst, const SolveConfig& config = {}) {
    using clock = std::chrono::steady_clock;
    auto run_start = clock::now();

    BackendSet backends(config.backends, config.descriptor);
    Incumbent incumbent{0, std::nullopt};
    if (config.initial_ub) {
        incumbent.value = *config.initial_ub;
    } else {
        Permutation identity(inst.jobs());
        std::iota(identity.begin(), identity.end(), 0);
        incumbent.value = makespan(inst, identity);
        incumbent.schedule = std::move(identity);
    }

    std::optional<Tuner> tuner;
    if (config.autotune) {
        tuner.emplace(backends.descriptor(), config.window, config.probes);
        if (config.tuner_trace) tuner->set_trace(config.tuner_trace);
    }
    const std::size_t default_batch = static_cast<std::size_t>(backends.descriptor().grain)
                                      * backends.descriptor().base_units;
    const std::size_t fixed_batch =
        config.fixed_batch ? static_cast<std::size_t>(*config.fixed_batch) : default_batch;

    PendingTree pending(inst.jobs());
    SearchStats stats;
    std::vector<Node> batch;
    batch.push_back(Node::root(inst));

    while (!batch.empty()) {
        auto t0 = clock::now();
        std::vector<int> bounds = backends.evaluate(inst, batch);
        double elapsed = std::chrono::duration<double>(clock::now() - t0).count();
        stats.bounded += static_cast<std::int64_t>(batch.size());
        IntegrateCounts counts = integrate(inst, batch, bounds, pending, incumbent);
        stats.pruned += counts.pruned;
        if (tuner) tuner->observe(static_cast<std::int64_t>(batch.size()),
                                  std::max(elapsed, 1e-9));
        if (pending.empty()) break;
        std::size_t target = tuner ? static_cast<std::size_t>(tuner->target()) : fixed_batch;
        batch = fill_buffer(inst, pending, target, &stats.branched);
    }

    stats.elapsed_seconds = std::chrono::duration<double>(clock::now() - run_start).count();
    Solution solution;
    solution.schedule = incumbent.schedule;
    solution.optimum = incumbent.value;
    solution.stats = stats;
    return solution;
}

/// Exhaustive enumeration of all n! permutations; ties resolved toward the
/// lexicographically smallest schedule. Test oracle, guarded to n <= 10.
inline Solution brute_force(const Instance& inst) {
    if (inst.jobs() > 10)
        throw std::invalid_argument("brute_force refuses instances with more than 10 jobs");
    Permutation perm(inst.jobs());
    std::iota(perm.begin(), perm.end(), 0);
    Solution best;
    best.optimum = makespan(inst, perm);
    best.schedule = perm;
    while (std::next_permutation(perm.begin(), perm.end())) {
        int value = makespan(inst, perm);
        ++best.stats.bounded;
        if (value < best.optimum) {
            best.optimum = value;
            best.schedule = perm;
        }
    }
    ++best.stats.bounded;
    return best;
}

}  // namespace flowbb

#endif  // FLOWBB_SEARCH_HPP
