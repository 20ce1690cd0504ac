// Command-line front door: dataset ingestion, configuration, and the
// test / matrix / benchmark / baseline flows with JSON output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bkr/dataset_io.hpp"
#include "bkr/error.hpp"
#include "bkr/parallel.hpp"
#include "bkr/reports.hpp"

namespace {

struct CommonArgs {
    bkr::RunConfig config;
    std::string schema_path;
    std::string out_path;
    std::string nystrom_arg = "128";
};

void add_config_flags(CLI::App& cmd, CommonArgs& args) {
    cmd.add_option("--ropi", args.config.ropi, "Region of practical independence")
        ->capture_default_str();
    cmd.add_option("--threshold", args.config.threshold,
                   "Decision probability threshold")
        ->capture_default_str();
    cmd.add_option("--gamma", args.config.gamma,
                   "Joint acceptance probability level")
        ->capture_default_str();
    cmd.add_option("--mc-samples", args.config.n_mc, "Posterior Monte Carlo draws")
        ->capture_default_str();
    cmd.add_option("--nystrom-rank", args.nystrom_arg,
                   "Nystrom landmark count, or 'exact' to disable the low-rank path")
        ->capture_default_str();
    cmd.add_option("--permutations", args.config.n_perm,
                   "Permutation replicates for the baseline test")
        ->capture_default_str();
    cmd.add_option("--seed", args.config.seed, "RNG seed")->capture_default_str();
    cmd.add_option("--threads", args.config.threads,
                   "Worker threads (0 = logical cores)")
        ->capture_default_str();
    cmd.add_option("--tau-budget", args.config.tau_budget,
                   "Dedicated draws for the exchangeability correction "
                   "(0 couples it to the main iterations)")
        ->capture_default_str();
    cmd.add_option("--out", args.out_path, "Write the JSON report here instead of stdout");
}

void finalize_config(CommonArgs& args) {
    if (args.nystrom_arg == "exact") {
        args.config.nystrom_m = 0;
    } else {
        try {
            args.config.nystrom_m = std::stol(args.nystrom_arg);
        } catch (const std::exception&) {
            throw bkr::config_error("--nystrom-rank expects an integer or 'exact'");
        }
    }
    if (args.config.threads == 0) args.config.threads = bkr::default_thread_count();
    bkr::validate(args.config);
}

void emit(const bkr::Json& report, const std::string& out_path) {
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw bkr::data_error("cannot write file: " + out_path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian kernelised (in)dependence tests for mixed-type data"};
    app.require_subcommand(1);

    CommonArgs args;
    args.config.threads = 0;  // resolves to logical cores

    std::string csv_path, col_x, col_y;
    bool pairwise_complete = false;

    auto* test = app.add_subcommand("test", "Posterior BdCor test for one column pair");
    test->add_option("csv", csv_path, "Input CSV path")->required();
    test->add_option("--schema", args.schema_path, "JSON schema sidecar")->required();
    test->add_option("--x", col_x, "First column name")->required();
    test->add_option("--y", col_y, "Second column name")->required();
    add_config_flags(*test, args);

    auto* matrix = app.add_subcommand("matrix", "All pairwise tests plus the joint report");
    matrix->add_option("csv", csv_path, "Input CSV path")->required();
    matrix->add_option("--schema", args.schema_path, "JSON schema sidecar")->required();
    matrix->add_flag("--pairwise-complete", pairwise_complete,
                     "Drop each pair's missing rows separately (marginal mode, "
                     "no joint report)");
    add_config_flags(*matrix, args);

    auto* baseline =
        app.add_subcommand("baseline", "Permutation HSIC significance test for one pair");
    baseline->add_option("csv", csv_path, "Input CSV path")->required();
    baseline->add_option("--schema", args.schema_path, "JSON schema sidecar")->required();
    baseline->add_option("--x", col_x, "First column name")->required();
    baseline->add_option("--y", col_y, "Second column name")->required();
    add_config_flags(*baseline, args);

    bkr::BenchmarkSpec bench;
    std::string generator = "d1";
    std::vector<double> rhos;
    std::string bench_csv_path, emit_dir;
    bool progress = false;
    auto* benchmark =
        app.add_subcommand("benchmark", "Synthetic decision benchmark (D1/D2 generators)");
    benchmark->add_option("--generator", generator, "d1 (Gaussian) or d2 (Clayton)")
        ->capture_default_str();
    benchmark->add_option("--n", bench.n, "Rows per generated dataset")
        ->capture_default_str();
    benchmark->add_option("--rho", rhos, "Coupling strengths (repeat or comma-separate)")
        ->required()
        ->delimiter(',');
    benchmark->add_option("--reps", bench.repetitions, "Repetitions per rho")
        ->capture_default_str();
    benchmark->add_option("--csv", bench_csv_path, "Also write the table as CSV here");
    benchmark->add_option("--emit-data", emit_dir,
                          "Write the first repetition of each rho as CSV + schema");
    benchmark->add_flag("--progress", progress, "Print progress to stderr");
    add_config_flags(*benchmark, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        finalize_config(args);

        bkr::Json report;
        if (*test) {
            const bkr::Schema schema = bkr::load_schema(args.schema_path);
            const bkr::Dataset dataset = bkr::load_dataset(csv_path, schema);
            report = bkr::cmd_test(dataset, schema, col_x, col_y, args.config);
        } else if (*matrix) {
            const bkr::Schema schema = bkr::load_schema(args.schema_path);
            const bkr::Dataset dataset = bkr::load_dataset(csv_path, schema);
            report = bkr::cmd_matrix(dataset, schema, args.config, pairwise_complete);
        } else if (*baseline) {
            const bkr::Schema schema = bkr::load_schema(args.schema_path);
            const bkr::Dataset dataset = bkr::load_dataset(csv_path, schema);
            report = bkr::cmd_baseline(dataset, schema, col_x, col_y, args.config);
        } else {
            bench.generator = bkr::parse_generator(generator);
            bench.rhos = rhos;
            if (!emit_dir.empty()) bench.emit_dir = emit_dir;
            bkr::ProgressFn progress_fn;
            if (progress)
                progress_fn = [](const std::string& msg) { std::cerr << msg << "\n"; };
            const auto rows = bkr::run_benchmark(bench, args.config, progress_fn);
            report = bkr::benchmark_report(bench, args.config, rows);
            if (!bench_csv_path.empty()) {
                std::ofstream out(bench_csv_path, std::ios::binary);
                if (!out) throw bkr::data_error("cannot write file: " + bench_csv_path);
                out << bkr::benchmark_csv(rows);
            }
        }
        emit(report, args.out_path);
        return 0;
    } catch (const bkr::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const bkr::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const bkr::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
