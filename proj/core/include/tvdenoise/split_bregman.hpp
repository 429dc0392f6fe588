#pragma once

#include "tvdenoise/adal.hpp"
#include "tvdenoise/image.hpp"
#include "tvdenoise/prox.hpp"

namespace tvd {

/// Stock penalty parameter for the split Bregman baseline, picked by the
/// committed grid search (scripts/sb-mu-search.sh) over the synthetic
/// corpus: iteration counts plateau for mu in [0.4, 0.55] and 0.4 keeps the
/// widest stability margin.
inline constexpr double kSbDefaultMu = 0.4;

/// Split Bregman iterate. Everything lives in the column-major image frame:
/// dx approximates the within-column differences of u, dy the within-row
/// differences mapped back through P^T.
struct SbState {
    int rows = 0;
    int cols = 0;
    std::vector<double> u;
    std::vector<double> dx;
    std::vector<double> dy;
    std::vector<double> rx;  ///< Bregman variable for the x constraint
    std::vector<double> ry;  ///< Bregman variable for the y constraint
    double mu = kSbDefaultMu;
    int sweeps = 1;  ///< Gauss-Seidel cycles per outer iteration
};

struct SbConfig {
    double lambda = 30.0;
    double mu = kSbDefaultMu;
    int sweeps = 1;
    TvModel model = TvModel::anisotropic;
    double tol = 1e-3;
    int max_iters = 1000;
};

/// u = b, auxiliary and Bregman variables zero.
SbState sb_init(const Image& b, double mu, int sweeps);

/// `cycles` full Gauss-Seidel sweeps, in ascending column-major pixel
/// order, on (mu I + L) u = mu b + Gx^T(dx - rx) + Gy^T(dy - ry), where L
/// is the 5-point Neumann Laplacian and Gx, Gy the grid-operators
/// difference stencils. Update per pixel:
/// u_i <- (rhs_i + sum of in-grid neighbor values) / (mu + degree_i).
void gauss_seidel_sweep(SbState& state, const Image& b, int cycles);

/// One outer iteration: Gauss-Seidel u-update (state.sweeps cycles), then
/// the d-update (soft threshold of Gu + r at lambda * mu, componentwise or
/// blockwise by model), then the Bregman update r += Gu - d.
void sb_step(SbState& state, const Image& b, TvModel model, double lambda);

/// Iterate sb_step until max(primal, dual) <= tol or max_iters.
///
/// primal: max relative gap between the difference stencils of u and
/// (dx, dy). dual: the solver-adal measure restricted to the d variables,
/// with r/mu playing the multiplier role. Trace metrics are evaluated on u
/// against `reference` (the noisy input when null).
SolveResult sb_solve(const Image& b, const SbConfig& cfg,
                     const Image* reference = nullptr,
                     const StopPredicate& stop = {});

}  // namespace tvd
