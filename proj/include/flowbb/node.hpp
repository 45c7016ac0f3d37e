#ifndef FLOWBB_NODE_HPP
#define FLOWBB_NODE_HPP

#include <cstdint>
#include <vector>

#include "flowbb/instance.hpp"

namespace flowbb {

/// Fixed-capacity job membership mask.
class JobMask {
public:
    JobMask() = default;
    explicit JobMask(int jobs) : words_((jobs + 63) / 64, 0) {}

    bool test(int j) const { return (words_[j >> 6] >> (j & 63)) & 1u; }
    void set(int j) { words_[j >> 6] |= std::uint64_t{1} << (j & 63); }

    bool operator==(const JobMask&) const = default;

private:
    std::vector<std::uint64_t> words_;
};

/// A subproblem: the scheduled prefix, its membership mask, the per-machine
/// heads of the prefix, and the lower bound once computed (-1 before).
struct Node {
    std::vector<int> prefix;
    JobMask scheduled;
    Heads heads;
    int lb = -1;

    int depth() const { return static_cast<int>(prefix.size()); }

    static Node root(const Instance& inst) {
        Node node;
        node.scheduled = JobMask(inst.jobs());
        node.heads.assign(inst.machines(), 0);
        return node;
    }

    /// The node obtained by scheduling `job` next.
    Node child(const Instance& inst, int job) const {
        Node out;
        out.prefix = prefix;
        out.prefix.push_back(job);
        out.scheduled = scheduled;
        out.scheduled.set(job);
        out.heads = child_heads(inst, heads, job);
        return out;
    }
};

}  // namespace flowbb

#endif  // FLOWBB_NODE_HPP
