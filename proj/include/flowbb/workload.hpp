#ifndef FLOWBB_WORKLOAD_HPP
#define FLOWBB_WORKLOAD_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowbb/bound.hpp"
#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"
#include "flowbb/pending.hpp"
#include "flowbb/search.hpp"

namespace flowbb {

/// Capture budget: a branching count (bit-reproducible) or a wall-time budget.
struct CaptureCutoff {
    enum class Kind { node_count, wall_time };
    Kind kind = Kind::node_count;
    std::int64_t nodes = 0;
    double seconds = 0.0;

    static CaptureCutoff by_nodes(std::int64_t n) { return {Kind::node_count, n, 0.0}; }
    static CaptureCutoff by_time(double s) { return {Kind::wall_time, 0, s}; }
};

/// A frozen list L of pending subproblems plus the upper bound in force when
/// it was captured. The experimental unit for speedup measurements.
struct WorkloadSnapshot {
    Instance instance;
    std::vector<Node> nodes;
    int incumbent_value;
    std::uint32_t seed;
    CaptureCutoff cutoff;
};

namespace detail {

// Deterministic Fisher-Yates; std::shuffle's draw sequence is not pinned by
// the standard, so reproducibility across hosts needs an explicit one.
template <class T>
void deterministic_shuffle(std::vector<T>& items, std::mt19937& rng) {
    for (std::size_t i = 0; i + 1 < items.size(); ++i) {
        std::size_t j = i + rng() % (items.size() - i);
        std::swap(items[i], items[j]);
    }
}

}  // namespace detail

/// Runs a sequential search with the incumbent frozen at `initial_ub` and
/// child insertion order shuffled by `seed`, until the budget is spent;
/// returns the entire pending list as L. The root is always branched, so a
/// zero budget yields the root's surviving children.
inline WorkloadSnapshot generate_workload(const Instance& inst, int initial_ub,
                                          CaptureCutoff cutoff, std::uint32_t seed,
                                          std::function<double()> clock = {}) {
    if (cutoff.kind == CaptureCutoff::Kind::wall_time && !clock) {
        auto start = std::chrono::steady_clock::now();
        clock = [start] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
    }
    std::mt19937 rng(seed);
    PendingTree pending(inst.jobs());

    auto expand = [&](const Node& node) {
        std::vector<Node> children = branch(inst, node);
        detail::deterministic_shuffle(children, rng);
        for (Node& child : children) {
            if (child.depth() == inst.jobs()) continue;  // incumbent frozen, leaves dropped
            child.lb = lower_bound(inst, child);
            if (child.lb < initial_ub) pending.push(std::move(child));
        }
    };

    expand(Node::root(inst));
    std::int64_t branched = 0;
    while (!pending.empty()) {
        if (cutoff.kind == CaptureCutoff::Kind::node_count) {
            if (branched >= cutoff.nodes) break;
        } else {
            if (clock() >= cutoff.seconds) break;
        }
        expand(pending.pop());
        ++branched;
    }

    WorkloadSnapshot snapshot{inst, pending.drain(), initial_ub, seed, cutoff};
    return snapshot;
}

/// Serializes a snapshot as a versioned text document: header fields, the
/// processing-time matrix, then one prefix per line.
inline std::string save_workload(const WorkloadSnapshot& snapshot) {
    std::ostringstream out;
    out << "flowbb-workload v1\n";
    out << "jobs " << snapshot.instance.jobs() << '\n';
    out << "machines " << snapshot.instance.machines() << '\n';
    out << "incumbent " << snapshot.incumbent_value << '\n';
    out << "seed " << snapshot.seed << '\n';
    if (snapshot.cutoff.kind == CaptureCutoff::Kind::node_count)
        out << "cutoff nodes " << snapshot.cutoff.nodes << '\n';
    else
        out << "cutoff seconds " << snapshot.cutoff.seconds << '\n';
    out << "times\n";
    for (int j = 0; j < snapshot.instance.jobs(); ++j) {
        for (int k = 0; k < snapshot.instance.machines(); ++k) {
            if (k) out << ' ';
            out << snapshot.instance.p(j, k);
        }
        out << '\n';
    }
    out << "nodes " << snapshot.nodes.size() << '\n';
    for (const Node& node : snapshot.nodes) {
        for (std::size_t i = 0; i < node.prefix.size(); ++i) {
            if (i) out << ' ';
            out << node.prefix[i];
        }
        out << '\n';
    }
    return out.str();
}

inline WorkloadSnapshot load_workload(std::istream& in) {
    auto fail = [](const std::string& what) -> void {
        throw std::runtime_error("workload file: " + what);
    };
    std::string line;
    if (!std::getline(in, line) || line != "flowbb-workload v1")
        fail("bad or missing version header");

    auto read_field = [&](const std::string& key) -> std::string {
        if (!std::getline(in, line)) fail("truncated header, expected '" + key + "'");
        std::istringstream ls(line);
        std::string got;
        ls >> got;
        if (got != key) fail("expected '" + key + "', got '" + got + "'");
        std::string rest;
        std::getline(ls, rest);
        return rest;
    };

    int jobs = std::stoi(read_field("jobs"));
    int machines = std::stoi(read_field("machines"));
    int incumbent = std::stoi(read_field("incumbent"));
    auto seed = static_cast<std::uint32_t>(std::stoul(read_field("seed")));
    std::istringstream cutoff_in(read_field("cutoff"));
    std::string cutoff_kind;
    cutoff_in >> cutoff_kind;
    CaptureCutoff cutoff;
    if (cutoff_kind == "nodes") {
        cutoff.kind = CaptureCutoff::Kind::node_count;
        cutoff_in >> cutoff.nodes;
    } else if (cutoff_kind == "seconds") {
        cutoff.kind = CaptureCutoff::Kind::wall_time;
        cutoff_in >> cutoff.seconds;
    } else {
        fail("unknown cutoff kind '" + cutoff_kind + "'");
    }

    if (!std::getline(in, line) || line != "times") fail("expected 'times' section");
    std::vector<int> p(static_cast<std::size_t>(jobs) * machines);
    for (int j = 0; j < jobs; ++j) {
        if (!std::getline(in, line)) fail("truncated time matrix");
        std::istringstream ls(line);
        for (int k = 0; k < machines; ++k)
            if (!(ls >> p[static_cast<std::size_t>(j) * machines + k]))
                fail("short time matrix row " + std::to_string(j));
    }
    Instance inst(jobs, machines, std::move(p));

    std::size_t count = std::stoul(read_field("nodes"));
    std::vector<Node> nodes;
    nodes.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(in, line)) fail("truncated node list");
        std::istringstream ls(line);
        Node node = Node::root(inst);
        int job;
        while (ls >> job) {
            if (job < 0 || job >= jobs) fail("job index out of range in node " + std::to_string(i));
            if (node.scheduled.test(job)) fail("repeated job in node " + std::to_string(i));
            node = node.child(inst, job);
        }
        if (node.prefix.empty()) fail("empty prefix in node " + std::to_string(i));
        node.lb = lower_bound(inst, node);
        if (node.lb >= incumbent)
            fail("node " + std::to_string(i) + " has lb >= incumbent");
        nodes.push_back(std::move(node));
    }
    return WorkloadSnapshot{std::move(inst), std::move(nodes), incumbent, seed, cutoff};
}

inline WorkloadSnapshot load_workload(const std::string& text) {
    std::istringstream in(text);
    return load_workload(in);
}

}  // namespace flowbb

#endif  // FLOWBB_WORKLOAD_HPP
