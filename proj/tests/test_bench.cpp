#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flowbb/bench.hpp"
#include "helpers.hpp"

using namespace flowbb;

namespace {

WorkloadSnapshot sample_workload(unsigned instance_seed, int jobs, int machines,
                                 int slack, std::int64_t budget) {
    std::mt19937 rng(instance_seed);
    Instance inst = testutil::random_instance(rng, jobs, machines);
    int ub = brute_force(inst).optimum + slack;
    return generate_workload(inst, ub, CaptureCutoff::by_nodes(budget), 5);
}

}  // namespace

TEST_CASE("resolution is equivalent across backend counts and batch sizes") {
    WorkloadSnapshot workload = sample_workload(89, 8, 3, 12, 10);
    REQUIRE(!workload.nodes.empty());

    BenchConfig reference;
    reference.backends = 1;
    reference.batch = 1;
    reference.descriptor = BackendDescriptor{1, 1, 1 << 20};
    ResolutionResult seq = resolve_workload(workload, reference);

    for (int backends : {1, 2, 4}) {
        for (int batch : {1, 8, 64, 512}) {
            BenchConfig config;
            config.backends = backends;
            config.batch = batch;
            config.descriptor = BackendDescriptor{1, 1, 1 << 20};
            ResolutionResult par = resolve_workload(workload, config);
            CHECK(par.best == seq.best);
            CHECK(par.nodes_bounded == seq.nodes_bounded);
        }
    }
}

TEST_CASE("resolving a workload recovers the instance optimum") {
    std::mt19937 rng(97);
    Instance inst = testutil::random_instance(rng, 7, 3);
    int optimum = brute_force(inst).optimum;
    WorkloadSnapshot workload = generate_workload(inst, optimum + 10, CaptureCutoff::by_nodes(6), 2);

    BenchConfig config;
    config.batch = 16;
    config.descriptor = BackendDescriptor{1, 1, 1 << 20};
    ResolutionResult result = resolve_workload(workload, config);
    REQUIRE(result.best.has_value());
    CHECK(*result.best == optimum);
}

TEST_CASE("run_experiment produces one row per config with consistent counts") {
    WorkloadSnapshot workload = sample_workload(101, 8, 3, 10, 12);
    std::vector<BenchConfig> configs;
    for (int batch : {8, 32, 128}) {
        BenchConfig config;
        config.backends = 2;
        config.batch = batch;
        config.descriptor = BackendDescriptor{1, 1, 1 << 20};
        configs.push_back(config);
    }
    Report report = run_experiment(workload, configs);
    REQUIRE(report.rows.size() == 3);
    for (const ReportRow& row : report.rows) {
        CHECK(row.jobs == 8);
        CHECK(row.machines == 3);
        CHECK(row.nodes_bounded == report.rows.front().nodes_bounded);
        CHECK(row.speedup > 0.0);
        CHECK(row.t_seq == report.rows.front().t_seq);
    }
}

TEST_CASE("self-comparison speedup is near one") {
    WorkloadSnapshot workload = sample_workload(103, 8, 4, 10, 40);
    BenchConfig config;
    config.backends = 1;
    config.batch = 1;
    config.descriptor = BackendDescriptor{1, 1, 1 << 20};
    // Median of repeated runs to ride out timer noise.
    std::vector<double> speedups;
    for (int i = 0; i < 3; ++i) {
        Report report = run_experiment(workload, {config});
        speedups.push_back(report.rows.front().speedup);
    }
    std::sort(speedups.begin(), speedups.end());
    CHECK(speedups[1] > 0.4);
    CHECK(speedups[1] < 2.5);
}

TEST_CASE("autotuned resolution matches fixed-batch outcomes") {
    WorkloadSnapshot workload = sample_workload(107, 8, 3, 10, 20);
    BenchConfig tuned;
    tuned.autotune = true;
    tuned.window = 2;
    tuned.descriptor = BackendDescriptor{4, 2, 4096};
    BenchConfig fixed;
    fixed.batch = 32;
    fixed.descriptor = BackendDescriptor{4, 2, 4096};
    ResolutionResult a = resolve_workload(workload, tuned);
    ResolutionResult b = resolve_workload(workload, fixed);
    CHECK(a.best == b.best);
    CHECK(a.nodes_bounded == b.nodes_bounded);
    CHECK(a.batch_used >= 4);
}

TEST_CASE("report rendering marks the row best and keeps formats consistent") {
    Report report;
    // The published single-GPU speedup row for the largest instance class.
    const int batches[] = {4096, 6144, 8192, 12288, 16384, 32768, 65536};
    const double speedups[] = {40.49, 57.60, 62.64, 69.76, 73.90, 75.48, 78.14};
    for (int i = 0; i < 7; ++i) {
        ReportRow row;
        row.jobs = 200;
        row.machines = 20;
        row.batch = batches[i];
        row.backends = 1;
        row.t_seq = 100.0;
        row.t_par = 100.0 / speedups[i];
        row.speedup = speedups[i];
        row.nodes_bounded = 1000;
        report.rows.push_back(row);
    }
    std::string table = emit_report(report, ReportFormat::table);
    CHECK(table.find("(No. of jobs x No. of machines)") != std::string::npos);
    CHECK(table.find("200 x 20") != std::string::npos);
    CHECK(table.find("78.14*") != std::string::npos);
    CHECK(table.find("75.48*") == std::string::npos);

    std::string csv = emit_report(report, ReportFormat::csv);
    for (double s : speedups) {
        std::ostringstream v;
        v << std::fixed << std::setprecision(2) << s;
        CHECK(table.find(v.str()) != std::string::npos);
        CHECK(csv.find(v.str()) != std::string::npos);
    }

    Report empty;
    std::string header_only = emit_report(empty, ReportFormat::csv);
    CHECK(header_only == "instance,batch,backends,t_seq,t_par,speedup,nodes_bounded\n");
}
