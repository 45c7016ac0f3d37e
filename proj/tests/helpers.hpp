#ifndef FLOWBB_TESTS_HELPERS_HPP
#define FLOWBB_TESTS_HELPERS_HPP

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "flowbb/flowbb.hpp"

namespace testutil {

inline flowbb::Instance small_3x2() {
    return flowbb::Instance(3, 2, {3, 2, 1, 4, 2, 3});
}

inline flowbb::Instance small_2x3() {
    return flowbb::Instance(2, 3, {2, 1, 3, 4, 2, 1});
}

inline flowbb::Instance random_instance(std::mt19937& rng, int jobs, int machines,
                                        int low = 1, int high = 99) {
    std::uniform_int_distribution<int> dist(low, high);
    std::vector<int> p(static_cast<std::size_t>(jobs) * machines);
    for (int& t : p) t = dist(rng);
    return flowbb::Instance(jobs, machines, std::move(p));
}

// Minimum makespan over every completion of a node, by exhaustive enumeration
// of the unscheduled suffix. Independent of the bounding code.
inline int brute_force_completion(const flowbb::Instance& inst, const flowbb::Node& node) {
    std::vector<int> rest;
    for (int j = 0; j < inst.jobs(); ++j)
        if (!node.scheduled.test(j)) rest.push_back(j);
    int best = std::numeric_limits<int>::max();
    std::sort(rest.begin(), rest.end());
    do {
        flowbb::Permutation perm = node.prefix;
        perm.insert(perm.end(), rest.begin(), rest.end());
        best = std::min(best, flowbb::makespan(inst, perm));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

// A random partial node of the instance, depth uniform in [0, n).
inline flowbb::Node random_node(const flowbb::Instance& inst, std::mt19937& rng) {
    std::vector<int> jobs(inst.jobs());
    std::iota(jobs.begin(), jobs.end(), 0);
    std::shuffle(jobs.begin(), jobs.end(), rng);
    int depth = std::uniform_int_distribution<int>(0, inst.jobs() - 1)(rng);
    flowbb::Node node = flowbb::Node::root(inst);
    for (int i = 0; i < depth; ++i) node = node.child(inst, jobs[i]);
    return node;
}

// Exhaustive two-machine flow-shop optimum (no lags) over all job orders.
inline int two_machine_optimum(const std::vector<flowbb::LagJob>& jobs) {
    std::vector<int> order(jobs.size());
    std::iota(order.begin(), order.end(), 0);
    int best = std::numeric_limits<int>::max();
    do {
        int t_a = 0, t_b = 0;
        for (int i : order) {
            t_a += jobs[i].a;
            t_b = std::max(t_b, t_a + jobs[i].lag) + jobs[i].b;
        }
        best = std::min(best, t_b);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace testutil

#endif  // FLOWBB_TESTS_HELPERS_HPP
