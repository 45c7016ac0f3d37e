#ifndef FLOWBB_BOUND_HPP
#define FLOWBB_BOUND_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"

namespace flowbb {

/// A job in a two-machine relaxation: time on the first machine, transfer lag,
/// time on the second machine.
struct LagJob {
    int a;
    int lag;
    int b;
};

/// Two-machine flow-shop makespan under Johnson's rule extended with lags.
/// Jobs with a+lag < lag+b come first, ascending by a+lag; the rest follow,
/// descending by lag+b. Ties keep input order so results are reproducible.
/// With all lags zero this is the optimal two-machine makespan.
inline int johnson_two_machine(std::span<const LagJob> jobs, int release_a, int release_b) {
    std::vector<int> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    auto in_first = [&](int i) { return jobs[i].a + jobs[i].lag < jobs[i].lag + jobs[i].b; };
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        bool fi = in_first(i), fj = in_first(j);
        if (fi != fj) return fi;
        if (fi) return jobs[i].a + jobs[i].lag < jobs[j].a + jobs[j].lag;
        return jobs[i].lag + jobs[i].b > jobs[j].lag + jobs[j].b;
    });
    int t_a = release_a;
    int t_b = release_b;
    for (int i : order) {
        t_a += jobs[i].a;
        t_b = std::max(t_b, t_a + jobs[i].lag) + jobs[i].b;
    }
    return t_b;
}

namespace detail {

// Unscheduled job indices of a node, ascending.
inline std::vector<int> unscheduled_jobs(const Instance& inst, const Node& node) {
    std::vector<int> out;
    out.reserve(inst.jobs() - node.depth());
    for (int j = 0; j < inst.jobs(); ++j)
        if (!node.scheduled.test(j)) out.push_back(j);
    return out;
}

}  // namespace detail

/// Machine-load bound: for each machine, prefix head + total unscheduled work
/// + the smallest remaining tail. Exact for m = 1.
inline int lb_one_machine(const Instance& inst, const Node& node) {
    std::vector<int> unscheduled = detail::unscheduled_jobs(inst, node);
    int best = 0;
    for (int k = 0; k < inst.machines(); ++k) {
        int load = 0;
        int min_tail = std::numeric_limits<int>::max();
        for (int j : unscheduled) {
            load += inst.p(j, k);
            min_tail = std::min(min_tail, inst.tail(j, k));
        }
        best = std::max(best, node.heads[k] + load + min_tail);
    }
    return best;
}

/// Two-machine relaxation on machines (k, l): Johnson with lags over the
/// unscheduled jobs, released at the prefix heads, plus the smallest tail
/// after machine l.
inline int lb_machine_pair(const Instance& inst, const Node& node, int k, int l) {
    std::vector<int> unscheduled = detail::unscheduled_jobs(inst, node);
    std::vector<LagJob> relaxed;
    relaxed.reserve(unscheduled.size());
    int min_tail = std::numeric_limits<int>::max();
    for (int j : unscheduled) {
        int lag = inst.tail(j, k) - inst.p(j, l) - inst.tail(j, l);
        relaxed.push_back({inst.p(j, k), lag, inst.p(j, l)});
        min_tail = std::min(min_tail, inst.tail(j, l));
    }
    return johnson_two_machine(relaxed, node.heads[k], node.heads[l]) + min_tail;
}

/// Composite lower bound: max of the machine-load bound and the two-machine
/// relaxation over every machine pair. O(m^2 n log n). Exact at leaves.
inline int lower_bound(const Instance& inst, const Node& node) {
    if (node.depth() == inst.jobs()) return node.heads.back();
    int best = lb_one_machine(inst, node);
    for (int k = 0; k < inst.machines(); ++k)
        for (int l = k + 1; l < inst.machines(); ++l)
            best = std::max(best, lb_machine_pair(inst, node, k, l));
    return best;
}

/// Bounds a batch of nodes, position-aligned with the input.
inline std::vector<int> evaluate_batch(const Instance& inst, std::span<const Node> nodes) {
    std::vector<int> bounds;
    bounds.reserve(nodes.size());
    for (const Node& node : nodes) bounds.push_back(lower_bound(inst, node));
    return bounds;
}

}  // namespace flowbb

#endif  // FLOWBB_BOUND_HPP
