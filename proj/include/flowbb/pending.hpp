#ifndef FLOWBB_PENDING_HPP
#define FLOWBB_PENDING_HPP

#include <cassert>
#include <optional>
#include <vector>

#include "flowbb/instance.hpp"
#include "flowbb/node.hpp"

namespace flowbb {

/// Pending nodes bucketed by depth. Pop order is deepest bucket first, LIFO
/// within a bucket.
class PendingTree {
public:
    explicit PendingTree(int max_depth) : buckets_(max_depth + 1) {}

    bool empty() const { return count_ == 0; }
    std::size_t size() const { return count_; }

    void push(Node node) {
        int d = node.depth();
        assert(d < static_cast<int>(buckets_.size()));
        buckets_[d].push_back(std::move(node));
        if (d > deepest_) deepest_ = d;
        ++count_;
    }

    Node pop() {
        assert(count_ > 0);
        while (buckets_[deepest_].empty()) --deepest_;
        Node node = std::move(buckets_[deepest_].back());
        buckets_[deepest_].pop_back();
        --count_;
        return node;
    }

    /// All pending nodes, shallowest bucket first, insertion order within a
    /// bucket. Used for workload capture.
    std::vector<Node> drain() {
        std::vector<Node> out;
        out.reserve(count_);
        for (auto& bucket : buckets_)
            for (Node& node : bucket) out.push_back(std::move(node));
        for (auto& bucket : buckets_) bucket.clear();
        count_ = 0;
        deepest_ = 0;
        return out;
    }

private:
    std::vector<std::vector<Node>> buckets_;
    std::size_t count_ = 0;
    int deepest_ = 0;
};

/// Best complete schedule found so far. `value` only decreases over a run;
/// with no schedule yet it is the externally supplied upper bound.
struct Incumbent {
    int value;
    std::optional<Permutation> schedule;
};

}  // namespace flowbb

#endif  // FLOWBB_PENDING_HPP
