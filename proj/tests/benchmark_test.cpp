#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tvdenoise/adal.hpp"
#include "tvdenoise/benchmark.hpp"
#include "tvdenoise/metrics.hpp"
#include "tvdenoise/prox.hpp"
#include "tvdenoise/synth.hpp"

using tvd::BenchmarkOptions;
using tvd::BenchmarkRow;
using tvd::Image;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvd_bench_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
};

std::string read_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream tmp;
    tmp << in.rdbuf();
    return tmp.str();
}

BenchmarkOptions small_options() {
    BenchmarkOptions opts;
    opts.clean = "synthetic:squares";
    opts.synth_rows = 32;
    opts.synth_cols = 32;
    opts.sigma = 30.0;
    opts.seed = 5;
    opts.max_iters = 300;
    opts.measure_time = false;
    return opts;
}

}  // namespace

TEST_CASE("synthetic generators have their documented layouts") {
    const Image squares = tvd::synth_image("squares", 4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(squares.at(i, j) == ((i < 2 && j < 2) ? 0.0 : 255.0));

    const Image ramp = tvd::synth_image("gradient-ramp", 3, 5);
    CHECK(ramp.at(1, 0) == 0.0);
    CHECK(ramp.at(2, 4) == 255.0);
    CHECK(ramp.at(0, 2) == doctest::Approx(127.5));

    const Image board = tvd::synth_image("checkerboard", 4, 4);
    CHECK(board.at(0, 0) == 255.0);
    CHECK(board.at(0, 1) == 0.0);
    CHECK(board.at(1, 0) == 0.0);

    const Image textured = tvd::synth_image("edges-plus-texture", 24, 24);
    for (double v : textured.data) {
        CHECK(v >= 0.0);
        CHECK(v <= 255.0);
    }

    CHECK_THROWS_AS(tvd::synth_image("unknown", 4, 4), std::invalid_argument);
}

TEST_CASE("checkerboard TV has its closed form") {
    for (const auto [n, m] : {std::pair{4, 4}, {5, 7}, {16, 9}}) {
        const Image board = tvd::synth_image("checkerboard", n, m);
        const double expected = 255.0 * (n * (m - 1) + m * (n - 1));
        CHECK(tvd::tv_anisotropic(board) == doctest::Approx(expected));
    }
}

TEST_CASE("generators are deterministic") {
    const Image a = tvd::synth_image("edges-plus-texture", 32, 32);
    const Image b = tvd::synth_image("edges-plus-texture", 32, 32);
    CHECK(a.data == b.data);
}

TEST_CASE("target band is two-sided around the reference error") {
    CHECK(tvd::within_target_band(0.1, 0.1));
    CHECK(tvd::within_target_band(0.1009, 0.1));
    CHECK(tvd::within_target_band(0.0991, 0.1));
    CHECK_FALSE(tvd::within_target_band(0.102, 0.1));
    CHECK_FALSE(tvd::within_target_band(0.098, 0.1));
}

TEST_CASE("report rows are well-formed and deterministic") {
    TempDir dir;
    BenchmarkOptions opts = small_options();
    opts.trace_dir = dir.path / "traces";
    const std::vector<BenchmarkRow> rows = tvd::run_benchmark(opts);
    REQUIRE(rows.size() == 3);
    for (const BenchmarkRow& row : rows) {
        CHECK(row.eta_star > 0.0);
        CHECK(row.iterations_to_target >= 1);
        CHECK(row.iterations_to_target <= opts.max_iters);
        CHECK(row.status == "ok");
        CHECK(std::isfinite(row.final_psnr));
        CHECK(row.wall_time_s == 0.0);
        const fs::path trace = *opts.trace_dir /
                               ("synthetic-squares_" + row.solver + "_aniso.csv");
        CHECK(fs::exists(trace));
    }
    CHECK(rows[0].solver == "adal");
    CHECK(rows[1].solver == "sb");
    CHECK(rows[2].solver == "sb2");

    const fs::path r1 = dir.path / "r1.csv", r2 = dir.path / "r2.csv";
    tvd::write_report_csv(rows, r1);
    tvd::write_report_csv(tvd::run_benchmark(opts), r2);
    CHECK(read_bytes(r1) == read_bytes(r2));
    CHECK(read_bytes(r1).starts_with(
        "image,solver,model,lambda,sigma,seed,eta_star,iterations_to_target,"
        "final_psnr,wall_time_s,status\n"));
}

TEST_CASE("clean input reaches the target quickly") {
    // With no noise the error trajectory starts at zero and climbs to the
    // reference level, so entering the two-sided 1% band still takes a few
    // dozen iterations rather than a handful.
    BenchmarkOptions opts = small_options();
    opts.clean = "synthetic:edges-plus-texture";
    opts.sigma = 0.0;
    const std::vector<BenchmarkRow> rows = tvd::run_benchmark(opts);
    for (const BenchmarkRow& row : rows) {
        CHECK(row.status == "ok");
        CHECK(row.iterations_to_target <= 60);
    }
}

TEST_CASE("the reference error is stable against a tighter tolerance") {
    BenchmarkOptions opts = small_options();
    const Image clean = tvd::load_clean_image(opts);
    const Image noisy = tvd::add_gaussian_noise(clean, tvd::NoiseSpec{opts.sigma, opts.seed});

    auto eta_at = [&](double tol) {
        tvd::SolverConfig cfg = tvd::default_config(tvd::TvModel::anisotropic);
        cfg.tol = tol;
        cfg.max_iters = 50000;
        const tvd::SolveResult result = tvd::adal_solve(noisy, cfg, &clean);
        REQUIRE(result.converged);
        return tvd::normalized_error(result.u, clean);
    };
    const double loose = eta_at(1e-6), tight = eta_at(1e-8);
    CHECK(std::abs(loose - tight) < 1e-3 * tight);
}

TEST_CASE("two inner cycles reach the target in strictly fewer outer iterations") {
    BenchmarkOptions opts;
    opts.clean = "synthetic:edges-plus-texture";
    opts.synth_rows = opts.synth_cols = 128;
    opts.sigma = 30.0;
    opts.seed = 17;
    opts.solvers = {"sb", "sb2"};
    opts.max_iters = 500;
    opts.measure_time = false;
    const std::vector<BenchmarkRow> rows = tvd::run_benchmark(opts);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].status == "ok");
    CHECK(rows[1].status == "ok");
    CHECK(rows[1].iterations_to_target < rows[0].iterations_to_target);
}

TEST_CASE("a too-small cap yields a timeout row but still reports") {
    BenchmarkOptions opts = small_options();
    opts.solvers = {"sb"};
    opts.max_iters = 2;
    const std::vector<BenchmarkRow> rows = tvd::run_benchmark(opts);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].status == "timeout");
    CHECK(rows[0].iterations_to_target == 2);
}

TEST_CASE("unknown solver names are rejected") {
    BenchmarkOptions opts = small_options();
    opts.solvers = {"sor"};
    CHECK_THROWS_AS(tvd::run_benchmark(opts), std::invalid_argument);
}

TEST_CASE("synthetic names resolve through load_clean_image") {
    BenchmarkOptions opts = small_options();
    opts.clean = "synthetic:checkerboard";
    const Image img = tvd::load_clean_image(opts);
    CHECK(img.rows == 32);
    CHECK(img.cols == 32);
    opts.clean = "synthetic:nope";
    CHECK_THROWS_AS(tvd::load_clean_image(opts), std::invalid_argument);
}
