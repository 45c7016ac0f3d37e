#ifndef FLOWBB_BENCH_HPP
#define FLOWBB_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "flowbb/autotune.hpp"
#include "flowbb/backend.hpp"
#include "flowbb/search.hpp"
#include "flowbb/workload.hpp"

namespace flowbb {

/// Raised when two resolutions of the same workload disagree; a correctness
/// bug, never reported as a benchmark result.
struct ResolutionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BenchConfig {
    int backends = 1;
    std::optional<int> batch;
    bool autotune = false;
    int window = 5;
    int probes = 2;
    BackendDescriptor descriptor = default_descriptor();
};

struct ReportRow {
    int jobs = 0;
    int machines = 0;
    int batch = 0;
    int backends = 0;
    double t_seq = 0.0;
    double t_par = 0.0;
    double speedup = 0.0;
    std::int64_t nodes_bounded = 0;
};

struct Report {
    std::vector<ReportRow> rows;
};

struct ResolutionResult {
    std::optional<int> best;  // best leaf strictly under the frozen bound
    std::int64_t nodes_bounded = 0;
    double elapsed_seconds = 0.0;
    int batch_used = 0;
};

/// Resolves a workload snapshot to completion with the incumbent frozen at
/// the snapshot's bound. Freezing makes the explored node set, and hence the
/// bounded-node count, identical for every backend count and batch size.
inline ResolutionResult resolve_workload(const WorkloadSnapshot& snapshot,
                                         const BenchConfig& config) {
    using clock = std::chrono::steady_clock;
    const Instance& inst = snapshot.instance;
    BackendSet backends(config.backends, config.descriptor);

    std::optional<Tuner> tuner;
    if (config.autotune) tuner.emplace(config.descriptor, config.window, config.probes);
    const std::size_t fixed_batch = config.batch ? static_cast<std::size_t>(*config.batch)
                                                 : static_cast<std::size_t>(config.descriptor.grain)
                                                       * config.descriptor.base_units;

    // Warm-up: one untimed bounding round over a prefix of L.
    if (!snapshot.nodes.empty()) {
        std::size_t warm = std::min<std::size_t>(snapshot.nodes.size(),
                                                 tuner ? tuner->target() : fixed_batch);
        (void)backends.evaluate(inst, std::span<const Node>(snapshot.nodes.data(), warm));
    }

    auto t0 = clock::now();
    PendingTree pending(inst.jobs());
    for (const Node& node : snapshot.nodes) pending.push(node);

    ResolutionResult result;
    std::size_t last_target = fixed_batch;
    while (!pending.empty()) {
        std::size_t target = tuner ? static_cast<std::size_t>(tuner->target()) : fixed_batch;
        last_target = target;
        std::vector<Node> batch = fill_buffer(inst, pending, target);
        auto e0 = clock::now();
        std::vector<int> bounds = backends.evaluate(inst, batch);
        double eval_elapsed = std::chrono::duration<double>(clock::now() - e0).count();
        result.nodes_bounded += static_cast<std::int64_t>(batch.size());
        for (std::size_t i = 0; i < batch.size(); ++i) {
            Node& node = batch[i];
            node.lb = bounds[i];
            if (node.depth() == inst.jobs()) {
                if (node.lb < snapshot.incumbent_value
                    && (!result.best || node.lb < *result.best))
                    result.best = node.lb;
            } else if (node.lb < snapshot.incumbent_value) {
                pending.push(std::move(node));
            }
        }
        if (tuner) tuner->observe(static_cast<std::int64_t>(batch.size()),
                                  std::max(eval_elapsed, 1e-9));
    }
    result.elapsed_seconds = std::chrono::duration<double>(clock::now() - t0).count();
    result.batch_used = tuner ? tuner->best_batch() : static_cast<int>(last_target);
    if (tuner && result.batch_used == 0) result.batch_used = tuner->target();
    return result;
}

/// Times a strictly sequential resolution of L, then each configured parallel
/// resolution of the same L, and reports Tseq/Tpar per configuration. Any
/// disagreement in outcome or bounded-node count aborts the experiment.
inline Report run_experiment(const WorkloadSnapshot& snapshot,
                             const std::vector<BenchConfig>& configs) {
    BenchConfig sequential;
    sequential.backends = 1;
    sequential.batch = 1;
    ResolutionResult seq = resolve_workload(snapshot, sequential);

    Report report;
    for (const BenchConfig& config : configs) {
        ResolutionResult par = resolve_workload(snapshot, config);
        if (par.best != seq.best)
            throw ResolutionMismatch("optimum mismatch between sequential and parallel resolution");
        if (par.nodes_bounded != seq.nodes_bounded)
            throw ResolutionMismatch("bounded-node count mismatch between resolutions");
        ReportRow row;
        row.jobs = snapshot.instance.jobs();
        row.machines = snapshot.instance.machines();
        row.batch = par.batch_used;
        row.backends = config.backends;
        row.t_seq = seq.elapsed_seconds;
        row.t_par = par.elapsed_seconds;
        row.speedup = seq.elapsed_seconds / std::max(par.elapsed_seconds, 1e-12);
        row.nodes_bounded = par.nodes_bounded;
        report.rows.push_back(row);
    }
    return report;
}

enum class ReportFormat { table, csv, json };

namespace detail {

inline std::string format_speedup(double value) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << value;
    return out.str();
}

}  // namespace detail

/// Renders a report. The table layout follows the instance-by-pool-size grid
/// convention: one row per instance, one column per batch size, speedup in
/// each cell, the row's best cell marked with '*'.
inline std::string emit_report(const Report& report, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "instance,batch,backends,t_seq,t_par,speedup,nodes_bounded\n";
        for (const ReportRow& row : report.rows)
            out << row.jobs << 'x' << row.machines << ',' << row.batch << ',' << row.backends
                << ',' << row.t_seq << ',' << row.t_par << ','
                << detail::format_speedup(row.speedup) << ',' << row.nodes_bounded << '\n';
        return out.str();
    }
    if (format == ReportFormat::json) {
        out << "[";
        for (std::size_t i = 0; i < report.rows.size(); ++i) {
            const ReportRow& row = report.rows[i];
            if (i) out << ",";
            out << "{\"instance\":\"" << row.jobs << "x" << row.machines << "\""
                << ",\"batch\":" << row.batch << ",\"backends\":" << row.backends
                << ",\"t_seq\":" << row.t_seq << ",\"t_par\":" << row.t_par
                << ",\"speedup\":" << detail::format_speedup(row.speedup)
                << ",\"nodes_bounded\":" << row.nodes_bounded << "}";
        }
        out << "]\n";
        return out.str();
    }

    // Table: pivot (instance, backends) rows against batch-size columns.
    std::set<int> batches;
    std::map<std::pair<std::string, int>, std::map<int, double>> grid;
    std::vector<std::pair<std::string, int>> row_order;
    for (const ReportRow& row : report.rows) {
        std::string label = std::to_string(row.jobs) + " x " + std::to_string(row.machines);
        auto key = std::make_pair(label, row.backends);
        if (!grid.count(key)) row_order.push_back(key);
        grid[key][row.batch] = row.speedup;
        batches.insert(row.batch);
    }
    out << "(No. of jobs x No. of machines)";
    for (int b : batches) out << " | " << b;
    out << '\n';
    for (const auto& key : row_order) {
        const auto& cells = grid[key];
        double best = 0.0;
        for (const auto& [batch, speedup] : cells) best = std::max(best, speedup);
        out << key.first << " (k=" << key.second << ")";
        for (int b : batches) {
            out << " | ";
            auto it = cells.find(b);
            if (it == cells.end()) {
                out << "-";
            } else {
                out << detail::format_speedup(it->second);
                if (it->second == best) out << '*';
            }
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace flowbb

#endif  // FLOWBB_BENCH_HPP
