#include "tvdenoise/benchmark.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "number_format.hpp"
#include "tvdenoise/adal.hpp"
#include "tvdenoise/metrics.hpp"
#include "tvdenoise/split_bregman.hpp"
#include "tvdenoise/synth.hpp"

namespace tvd {

namespace {

constexpr std::string_view kSyntheticPrefix = "synthetic:";

std::string model_name(TvModel model) {
    return model == TvModel::anisotropic ? "aniso" : "iso";
}

std::string slug(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return out;
}

// First trace entry inside the target band, or 0 when none is.
int target_iteration(const std::vector<TraceRecord>& trace, double eta_star) {
    for (const TraceRecord& rec : trace)
        if (within_target_band(rec.normalized_error, eta_star)) return rec.iter;
    return 0;
}

}  // namespace

bool within_target_band(double eta, double eta_star) {
    return std::abs(eta - eta_star) <= 0.01 * eta_star + 1e-12;
}

Image load_clean_image(const BenchmarkOptions& opts) {
    if (opts.clean.starts_with(kSyntheticPrefix))
        return synth_image(opts.clean.substr(kSyntheticPrefix.size()), opts.synth_rows,
                           opts.synth_cols);
    return read_pgm(opts.clean);
}

std::vector<BenchmarkRow> run_benchmark(const BenchmarkOptions& opts) {
    const Image clean = load_clean_image(opts);
    const Image noisy = add_gaussian_noise(clean, NoiseSpec{opts.sigma, opts.seed});
    const double mu1 = opts.mu1.value_or(opts.model == TvModel::anisotropic ? 0.2 : 0.3);

    // Reference solution at tight tolerance fixes the target error eta*.
    SolverConfig ref_cfg;
    ref_cfg.lambda = opts.lambda;
    ref_cfg.mu1 = mu1;
    ref_cfg.mu2 = opts.mu2;
    ref_cfg.model = opts.model;
    ref_cfg.tol = opts.reference_tol;
    ref_cfg.max_iters = opts.reference_max_iters;
    const SolveResult reference = adal_solve(noisy, ref_cfg, &clean);
    const double eta_star = normalized_error(reference.u, clean);

    const StopPredicate stop_at_target = [eta_star](const TraceRecord& rec) {
        return within_target_band(rec.normalized_error, eta_star);
    };

    if (opts.trace_dir) std::filesystem::create_directories(*opts.trace_dir);

    std::vector<BenchmarkRow> rows;
    rows.reserve(opts.solvers.size());
    for (const std::string& solver : opts.solvers) {
        SolveResult run;
        const auto started = std::chrono::steady_clock::now();
        if (solver == "adal") {
            SolverConfig cfg = ref_cfg;
            cfg.tol = 1e-15;  // let the eta target decide
            cfg.max_iters = opts.max_iters;
            run = adal_solve(noisy, cfg, &clean, stop_at_target);
        } else if (solver == "sb" || solver == "sb2") {
            SbConfig cfg;
            cfg.lambda = opts.lambda;
            cfg.mu = opts.sb_mu;
            cfg.sweeps = solver == "sb" ? 1 : opts.sb_sweeps2;
            cfg.model = opts.model;
            cfg.tol = 1e-15;
            cfg.max_iters = opts.max_iters;
            run = sb_solve(noisy, cfg, &clean, stop_at_target);
        } else {
            throw std::invalid_argument("run_benchmark: unknown solver '" + solver + "'");
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - started;

        const int reached = target_iteration(run.trace, eta_star);
        BenchmarkRow row;
        row.image = opts.clean;
        row.solver = solver;
        row.model = model_name(opts.model);
        row.lambda = opts.lambda;
        row.sigma = opts.sigma;
        row.seed = opts.seed;
        row.eta_star = eta_star;
        row.iterations_to_target = reached > 0 ? reached : opts.max_iters;
        row.final_psnr = run.trace.empty() ? 0.0 : run.trace.back().psnr;
        row.wall_time_s = opts.measure_time ? elapsed.count() : 0.0;
        row.status = reached > 0 ? "ok" : "timeout";
        rows.push_back(row);

        if (opts.trace_dir) {
            const std::string name =
                slug(opts.clean) + "_" + solver + "_" + model_name(opts.model) + ".csv";
            write_trace_csv(run.trace, *opts.trace_dir / name);
        }
    }
    return rows;
}

void write_report_csv(std::span<const BenchmarkRow> rows,
                      const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "image,solver,model,lambda,sigma,seed,eta_star,iterations_to_target,"
           "final_psnr,wall_time_s,status\n";
    for (const BenchmarkRow& r : rows) {
        out << r.image << ',' << r.solver << ',' << r.model << ','
            << detail::repr(r.lambda) << ',' << detail::repr(r.sigma) << ','
            << detail::repr(r.seed) << ',' << detail::repr(r.eta_star) << ','
            << detail::repr(r.iterations_to_target) << ',' << detail::repr(r.final_psnr)
            << ',' << detail::repr(r.wall_time_s) << ',' << r.status << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace tvd
