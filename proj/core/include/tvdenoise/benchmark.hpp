#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tvdenoise/prox.hpp"
#include "tvdenoise/split_bregman.hpp"

namespace tvd {

/// Solver-comparison protocol: noise a clean image, compute a reference
/// solution at tight tolerance, then count the iterations each solver needs
/// to bring its normalized error within 1% of the reference error.
struct BenchmarkOptions {
    std::string clean;          ///< PGM path or "synthetic:NAME"
    int synth_rows = 128;       ///< size used for synthetic: images
    int synth_cols = 128;
    double sigma = 30.0;
    std::uint64_t seed = 0;
    double lambda = 30.0;
    TvModel model = TvModel::anisotropic;
    std::optional<double> mu1;  ///< defaults to 0.2 (aniso) / 0.3 (iso)
    double mu2 = 1.5;
    double sb_mu = kSbDefaultMu;
    int sb_sweeps2 = 2;         ///< inner cycles of the "sb2" variant
    std::vector<std::string> solvers = {"adal", "sb", "sb2"};
    int max_iters = 500;        ///< per-solver iteration cap
    double reference_tol = 1e-6;
    int reference_max_iters = 20000;
    std::optional<std::filesystem::path> trace_dir;
    bool measure_time = true;   ///< false writes 0 for wall_time_s
};

/// One report row (image x solver x model).
struct BenchmarkRow {
    std::string image;
    std::string solver;   ///< adal | sb | sb2
    std::string model;    ///< aniso | iso
    double lambda = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double eta_star = 0.0;            ///< reference normalized error
    int iterations_to_target = 0;     ///< cap when status is "timeout"
    double final_psnr = 0.0;          ///< PSNR at the stopping iterate
    double wall_time_s = 0.0;
    std::string status;               ///< ok | timeout
};

/// |eta - eta_star| <= 0.01 * eta_star, with a 1e-12 absolute floor so a
/// degenerate eta_star of zero keeps the band non-empty.
bool within_target_band(double eta, double eta_star);

/// Resolve opts.clean: "synthetic:NAME" through synth_image at
/// (synth_rows, synth_cols), anything else as a PGM path.
Image load_clean_image(const BenchmarkOptions& opts);

/// Run the protocol; one row per requested solver, in request order.
/// Per-solver iteration traces are written under opts.trace_dir when set.
std::vector<BenchmarkRow> run_benchmark(const BenchmarkOptions& opts);

/// CSV with header
/// `image,solver,model,lambda,sigma,seed,eta_star,iterations_to_target,final_psnr,wall_time_s,status`.
void write_report_csv(std::span<const BenchmarkRow> rows,
                      const std::filesystem::path& path);

}  // namespace tvd
