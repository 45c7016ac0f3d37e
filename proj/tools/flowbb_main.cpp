#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "flowbb/flowbb.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

flowbb::Instance load_instance(const std::string& path, const std::string& format) {
    std::string text = read_file(path);
    flowbb::InstanceFormat fmt;
    if (format == "simple") {
        fmt = flowbb::InstanceFormat::simple;
    } else if (format == "taillard") {
        fmt = flowbb::InstanceFormat::taillard;
    } else {
        // auto: Taillard files carry prose headers, simple files are all digits
        bool has_alpha = false;
        for (char c : text)
            if (std::isalpha(static_cast<unsigned char>(c))) {
                has_alpha = true;
                break;
            }
        fmt = has_alpha ? flowbb::InstanceFormat::taillard : flowbb::InstanceFormat::simple;
    }
    return flowbb::parse_instance(text, fmt);
}

std::string schedule_to_string(const flowbb::Permutation& perm) {
    std::ostringstream out;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (i) out << ' ';
        out << perm[i];
    }
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact branch-and-bound solver for the permutation flow shop"};
    app.require_subcommand(1);

    // gen-instance
    auto* gen = app.add_subcommand("gen-instance", "Generate a Taillard-style random instance");
    int gen_jobs = 0, gen_machines = 0;
    std::int32_t gen_seed = 0;
    std::string gen_out;
    gen->add_option("--jobs", gen_jobs, "Job count")->required();
    gen->add_option("--machines", gen_machines, "Machine count")->required();
    gen->add_option("--seed", gen_seed, "Generator seed in (0, 2^31-1)")->required();
    gen->add_option("--out", gen_out, "Output file (default stdout)");

    // shared solver knobs
    struct SolverOpts {
        std::string instance_path;
        std::string format = "auto";
        int backends = 1;
        int batch = 0;
        bool autotune = false;
        int window = 5;
        int probes = 2;
        int grain = 0;
        int max_batch = 0;
        bool trace_tuner = false;
    };

    auto add_solver_opts = [](CLI::App* cmd, SolverOpts& opts, bool with_instance) {
        if (with_instance) {
            cmd->add_option("--instance", opts.instance_path, "Instance file")->required();
            cmd->add_option("--format", opts.format, "Instance format: auto|simple|taillard")
                ->check(CLI::IsMember({"auto", "simple", "taillard"}));
        }
        cmd->add_option("--backends", opts.backends, "Number of CPU bounding backends");
        auto* batch_opt = cmd->add_option("--batch", opts.batch, "Fixed batch size");
        cmd->add_flag("--autotune", opts.autotune, "Tune the batch size at runtime")
            ->excludes(batch_opt);
        cmd->add_option("--window", opts.window, "Tuner measurement window (iterations)");
        cmd->add_option("--probes", opts.probes, "Tuner refinement probes per side");
        cmd->add_option("--grain", opts.grain, "Override backend grain");
        cmd->add_option("--max-batch", opts.max_batch, "Override backend max batch");
        cmd->add_flag("--trace-tuner", opts.trace_tuner, "Log tuner decisions to stderr");
    };

    auto make_descriptor = [](const SolverOpts& opts) {
        flowbb::BackendDescriptor d = flowbb::default_descriptor();
        if (opts.grain > 0) d.grain = opts.grain;
        if (opts.max_batch > 0) d.max_batch = opts.max_batch;
        d.max_batch = std::max(d.max_batch, d.grain * d.base_units);
        return d;
    };

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance to optimality");
    SolverOpts solve_opts;
    add_solver_opts(solve_cmd, solve_opts, true);
    int solve_ub = 0;
    std::uint32_t solve_seed = 0;
    bool solve_json = false;
    auto* ub_opt = solve_cmd->add_option("--ub", solve_ub, "Initial upper bound");
    solve_cmd->add_option("--seed", solve_seed, "Run seed (recorded in output)");
    solve_cmd->add_flag("--json", solve_json, "Emit a JSON document instead of key=value lines");

    // workload
    auto* workload_cmd = app.add_subcommand("workload", "Capture a workload snapshot (list L)");
    std::string wl_instance, wl_format = "auto", wl_out;
    int wl_ub = 0;
    std::int64_t wl_nodes = 0;
    double wl_seconds = -1.0;
    std::uint32_t wl_seed = 0;
    workload_cmd->add_option("--instance", wl_instance, "Instance file")->required();
    workload_cmd->add_option("--format", wl_format, "Instance format: auto|simple|taillard")
        ->check(CLI::IsMember({"auto", "simple", "taillard"}));
    workload_cmd->add_option("--ub", wl_ub, "Frozen upper bound during capture")->required();
    auto* wl_nodes_opt =
        workload_cmd->add_option("--nodes", wl_nodes, "Capture budget in branchings");
    workload_cmd->add_option("--seconds", wl_seconds, "Capture budget in wall seconds")
        ->excludes(wl_nodes_opt);
    workload_cmd->add_option("--seed", wl_seed, "Shuffle seed");
    workload_cmd->add_option("--out", wl_out, "Snapshot output file")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time resolutions of a workload snapshot");
    SolverOpts bench_opts;
    add_solver_opts(bench_cmd, bench_opts, false);
    std::string bench_workload, bench_format = "table";
    bench_cmd->add_option("--workload", bench_workload, "Workload snapshot file")->required();
    bench_cmd->add_option("--format", bench_format, "Report format: table|csv|json")
        ->check(CLI::IsMember({"table", "csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            flowbb::Instance inst = flowbb::generate_instance(gen_jobs, gen_machines, gen_seed);
            write_output(gen_out, flowbb::to_simple_format(inst));
            return 0;
        }

        if (solve_cmd->parsed()) {
            flowbb::Instance inst = load_instance(solve_opts.instance_path, solve_opts.format);
            flowbb::SolveConfig config;
            if (ub_opt->count()) config.initial_ub = solve_ub;
            config.backends = solve_opts.backends;
            config.autotune = solve_opts.autotune;
            if (solve_opts.batch > 0) config.fixed_batch = solve_opts.batch;
            config.seed = solve_seed;
            config.window = solve_opts.window;
            config.probes = solve_opts.probes;
            config.descriptor = make_descriptor(solve_opts);
            if (solve_opts.trace_tuner)
                config.tuner_trace = [](int window, int batch, double throughput,
                                        const std::string& decision) {
                    std::cerr << "tuner window=" << window << " batch=" << batch
                              << " throughput=" << throughput << " decision=" << decision << '\n';
                };
            flowbb::Solution solution = flowbb::solve(inst, config);
            if (solve_json) {
                std::cout << "{\"feasible\":" << (solution.found() ? "true" : "false");
                if (solution.found())
                    std::cout << ",\"optimum\":" << solution.optimum << ",\"schedule\":\""
                              << schedule_to_string(*solution.schedule) << "\"";
                std::cout << ",\"nodes_branched\":" << solution.stats.branched
                          << ",\"nodes_bounded\":" << solution.stats.bounded
                          << ",\"nodes_pruned\":" << solution.stats.pruned
                          << ",\"elapsed_seconds\":" << solution.stats.elapsed_seconds << "}\n";
            } else if (solution.found()) {
                std::cout << "optimum=" << solution.optimum << '\n'
                          << "schedule=" << schedule_to_string(*solution.schedule) << '\n';
                std::cout << "nodes_branched=" << solution.stats.branched << '\n'
                          << "nodes_bounded=" << solution.stats.bounded << '\n'
                          << "nodes_pruned=" << solution.stats.pruned << '\n'
                          << "elapsed_seconds=" << solution.stats.elapsed_seconds << '\n';
            } else {
                std::cout << "infeasible under given bound " << solution.optimum << '\n';
                return 1;
            }
            return 0;
        }

        if (workload_cmd->parsed()) {
            flowbb::Instance inst = load_instance(wl_instance, wl_format);
            flowbb::CaptureCutoff cutoff = wl_seconds >= 0.0
                                               ? flowbb::CaptureCutoff::by_time(wl_seconds)
                                               : flowbb::CaptureCutoff::by_nodes(wl_nodes);
            flowbb::WorkloadSnapshot snapshot =
                flowbb::generate_workload(inst, wl_ub, cutoff, wl_seed);
            write_output(wl_out, flowbb::save_workload(snapshot));
            std::cerr << "captured " << snapshot.nodes.size() << " pending nodes\n";
            return 0;
        }

        if (bench_cmd->parsed()) {
            std::ifstream in(bench_workload);
            if (!in) throw std::runtime_error("cannot open " + bench_workload);
            flowbb::WorkloadSnapshot snapshot = flowbb::load_workload(in);
            flowbb::BenchConfig config;
            config.backends = bench_opts.backends;
            if (bench_opts.batch > 0) config.batch = bench_opts.batch;
            config.autotune = bench_opts.autotune;
            config.window = bench_opts.window;
            config.probes = bench_opts.probes;
            config.descriptor = make_descriptor(bench_opts);
            flowbb::Report report;
            try {
                report = flowbb::run_experiment(snapshot, {config});
            } catch (const flowbb::ResolutionMismatch& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
            flowbb::ReportFormat fmt = bench_format == "csv"    ? flowbb::ReportFormat::csv
                                       : bench_format == "json" ? flowbb::ReportFormat::json
                                                                : flowbb::ReportFormat::table;
            std::cout << flowbb::emit_report(report, fmt);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
