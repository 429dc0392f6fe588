// Command-line front end: single-image denoising, solver comparison, and
// synthetic test-image generation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tvdenoise/adal.hpp"
#include "tvdenoise/benchmark.hpp"
#include "tvdenoise/image.hpp"
#include "tvdenoise/split_bregman.hpp"
#include "tvdenoise/synth.hpp"

namespace {

struct DenoiseArgs {
    std::string in;
    std::string out;
    std::string solver = "adal";
    std::string model = "aniso";
    double lambda = 30.0;
    std::optional<double> mu1;
    double mu2 = 1.5;
    double sb_mu = tvd::kSbDefaultMu;
    double tol = 1e-3;
    int max_iters = 1000;
    std::optional<std::string> trace;
};

tvd::TvModel parse_model(const std::string& name) {
    return name == "iso" ? tvd::TvModel::isotropic : tvd::TvModel::anisotropic;
}

int run_denoise(const DenoiseArgs& args) {
    const tvd::Image noisy = tvd::read_pgm(args.in);
    const tvd::TvModel model = parse_model(args.model);
    tvd::SolveResult result;

    if (args.solver == "adal") {
        tvd::SolverConfig cfg = tvd::default_config(model);
        cfg.lambda = args.lambda;
        if (args.mu1) cfg.mu1 = *args.mu1;
        cfg.mu2 = args.mu2;
        cfg.tol = args.tol;
        cfg.max_iters = args.max_iters;
        result = tvd::adal_solve(noisy, cfg);
    } else {
        tvd::SbConfig cfg;
        cfg.lambda = args.lambda;
        cfg.mu = args.sb_mu;
        cfg.sweeps = args.solver == "sb2" ? 2 : 1;
        cfg.model = model;
        cfg.tol = args.tol;
        cfg.max_iters = args.max_iters;
        result = tvd::sb_solve(noisy, cfg);
    }

    tvd::write_pgm(result.u, args.out);
    if (args.trace) tvd::write_trace_csv(result.trace, *args.trace);
    std::cout << "iterations: " << result.iterations
              << (result.converged ? " (converged)" : " (iteration cap)") << '\n';
    return 0;
}

struct BenchmarkArgs {
    tvd::BenchmarkOptions opts;
    std::string model = "aniso";
    std::string solvers = "adal,sb,sb2";
    std::string report;
    std::optional<std::string> trace_dir;
    std::optional<double> mu1;
    bool no_timing = false;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string item = text.substr(
            start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

int run_benchmark_cmd(BenchmarkArgs& args) {
    args.opts.model = parse_model(args.model);
    args.opts.solvers = split_list(args.solvers);
    args.opts.mu1 = args.mu1;
    args.opts.measure_time = !args.no_timing;
    if (args.trace_dir) args.opts.trace_dir = *args.trace_dir;

    const std::vector<tvd::BenchmarkRow> rows = tvd::run_benchmark(args.opts);
    tvd::write_report_csv(rows, args.report);
    for (const tvd::BenchmarkRow& row : rows)
        std::cout << row.solver << '/' << row.model << ": " << row.iterations_to_target
                  << " iterations (" << row.status << "), eta* = " << row.eta_star << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total-variation image denoising via alternating-direction solvers"};
    app.require_subcommand(1);

    DenoiseArgs denoise;
    CLI::App* cmd_denoise = app.add_subcommand("denoise", "Denoise a PGM image");
    cmd_denoise->add_option("--in", denoise.in, "input PGM (P5 or P2)")->required();
    cmd_denoise->add_option("--out", denoise.out, "output PGM (P5)")->required();
    cmd_denoise->add_option("--solver", denoise.solver, "adal | sb | sb2")
        ->check(CLI::IsMember({"adal", "sb", "sb2"}))
        ->capture_default_str();
    cmd_denoise->add_option("--model", denoise.model, "aniso | iso")
        ->check(CLI::IsMember({"aniso", "iso"}))
        ->capture_default_str();
    cmd_denoise->add_option("--lambda", denoise.lambda, "TV weight")->capture_default_str();
    cmd_denoise->add_option("--mu1", denoise.mu1,
                            "gradient-constraint penalty (default 0.2 aniso, 0.3 iso)");
    cmd_denoise->add_option("--mu2", denoise.mu2, "permutation-constraint penalty")
        ->capture_default_str();
    cmd_denoise->add_option("--sb-mu", denoise.sb_mu, "split Bregman penalty")
        ->capture_default_str();
    cmd_denoise->add_option("--tol", denoise.tol, "relative residual tolerance")
        ->capture_default_str();
    cmd_denoise->add_option("--max-iters", denoise.max_iters, "iteration cap")
        ->capture_default_str();
    cmd_denoise->add_option("--trace", denoise.trace, "write per-iteration CSV trace");

    BenchmarkArgs bench;
    CLI::App* cmd_bench = app.add_subcommand(
        "benchmark", "Count solver iterations to reach 1% of the reference error");
    cmd_bench->add_option("--clean", bench.opts.clean, "clean PGM path or synthetic:NAME")
        ->required();
    cmd_bench->add_option("--rows", bench.opts.synth_rows, "rows for synthetic images")
        ->capture_default_str();
    cmd_bench->add_option("--cols", bench.opts.synth_cols, "columns for synthetic images")
        ->capture_default_str();
    cmd_bench->add_option("--sigma", bench.opts.sigma, "noise standard deviation")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench.opts.seed, "noise seed")->capture_default_str();
    cmd_bench->add_option("--lambda", bench.opts.lambda, "TV weight")->capture_default_str();
    cmd_bench->add_option("--model", bench.model, "aniso | iso")
        ->check(CLI::IsMember({"aniso", "iso"}))
        ->capture_default_str();
    cmd_bench->add_option("--solvers", bench.solvers, "comma-separated: adal,sb,sb2")
        ->capture_default_str();
    cmd_bench->add_option("--mu1", bench.mu1, "gradient-constraint penalty");
    cmd_bench->add_option("--mu2", bench.opts.mu2, "permutation-constraint penalty")
        ->capture_default_str();
    cmd_bench->add_option("--sb-mu", bench.opts.sb_mu, "split Bregman penalty")
        ->capture_default_str();
    cmd_bench->add_option("--max-iters", bench.opts.max_iters, "per-solver iteration cap")
        ->capture_default_str();
    cmd_bench->add_option("--report", bench.report, "output report CSV")->required();
    cmd_bench->add_option("--trace-dir", bench.trace_dir, "directory for per-solver traces");
    cmd_bench->add_flag("--no-timing", bench.no_timing,
                        "write 0 for wall_time_s (byte-reproducible reports)");

    std::string synth_name;
    int synth_rows = 128, synth_cols = 128;
    std::string synth_out;
    CLI::App* cmd_synth = app.add_subcommand("synth", "Write a synthetic test image");
    cmd_synth->add_option("--name", synth_name, "squares | gradient-ramp | checkerboard | edges-plus-texture")
        ->required();
    cmd_synth->add_option("--rows", synth_rows, "image rows")->capture_default_str();
    cmd_synth->add_option("--cols", synth_cols, "image columns")->capture_default_str();
    cmd_synth->add_option("--out", synth_out, "output PGM")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success))
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_denoise->parsed()) return run_denoise(denoise);
        if (cmd_bench->parsed()) return run_benchmark_cmd(bench);
        if (cmd_synth->parsed()) {
            tvd::write_pgm(tvd::synth_image(synth_name, synth_rows, synth_cols), synth_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
