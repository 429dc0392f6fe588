#pragma once

#include <functional>
#include <vector>

#include "tvdenoise/image.hpp"
#include "tvdenoise/prox.hpp"

namespace tvd {

/// Lagrange multipliers for the three linear constraints
/// d_x = D u, d_y = D v, v = P u.
struct Multipliers {
    std::vector<double> gx;  ///< for D u = d_x, column-major frame
    std::vector<double> gy;  ///< for D v = d_y, row-major frame
    std::vector<double> gz;  ///< for P u = v, row-major frame
};

struct SolverConfig {
    double lambda = 30.0;  ///< TV weight
    double mu1 = 0.2;      ///< gradient-constraint penalty parameter
    double mu2 = 1.5;      ///< permutation-constraint penalty parameter
    TvModel model = TvModel::anisotropic;
    double tol = 1e-3;     ///< relative residual tolerance
    int max_iters = 1000;
};

/// Config with the stock parameter choices for each model
/// (lambda 30, mu1 0.2 anisotropic / 0.3 isotropic, mu2 1.5).
SolverConfig default_config(TvModel model);

struct SolveResult {
    Image u;                          ///< returned image
    int iterations = 0;               ///< steps performed; == trace.size()
    std::vector<TraceRecord> trace;   ///< one record per iteration
    bool converged = false;           ///< stopped on the residual tolerance
};

/// Per-iteration early-exit hook; return true to stop after this iteration.
using StopPredicate = std::function<bool(const TraceRecord&)>;

/// Full iterate of the alternating-direction solver.
struct AdalState {
    int rows = 0;
    int cols = 0;
    std::vector<double> dx;  ///< column-major frame, pairs with u
    std::vector<double> dy;  ///< row-major frame, pairs with v
    std::vector<double> u;   ///< column-major
    std::vector<double> v;   ///< row-major
    Multipliers mult;
};

/// u = b, v = P b, auxiliary variables and multipliers zero.
/// Requires rows >= 2 and cols >= 2.
AdalState adal_init(const Image& b);

/// One anisotropic iteration, in order: soft threshold d_x; tridiagonal
/// solve for v (using the previous d_y and u); soft threshold d_y from the
/// new v; tridiagonal solve for u (using the new d_x and v); multiplier
/// updates gx += (Du - dx)/mu1, gy += (Dv - dy)/mu1, gz += (Pu - v)/mu2.
void adal_step_anisotropic(AdalState& state, const Image& b, const SolverConfig& cfg);

/// One isotropic iteration: d_x and d_y are updated jointly by the block
/// soft threshold (pairing components pixel-wise across the two frames),
/// then v uses the new d_y, then u, then the same multiplier updates.
void adal_step_isotropic(AdalState& state, const Image& b, const SolverConfig& cfg);

/// Dispatch on cfg.model.
void adal_step(AdalState& state, const Image& b, const SolverConfig& cfg);

struct Residuals {
    double primal = 0.0;
    double dual = 0.0;
};

/// Stopping-rule residuals between consecutive iterates.
///
/// primal: max over the constraints {Du - dx, Dv - dy, Pu - v} of
/// ||gap|| / max(1, ||Du||) (resp. ||Dv||, ||Pu||).
/// dual: max(||dx - dx_prev||/mu1, ||dy - dy_prev||/mu1, ||v - v_prev||/mu2)
/// divided by max(1, ||gx||, ||gy||, ||gz||) at the current iterate.
Residuals adal_residuals(const AdalState& cur, const AdalState& prev,
                         const SolverConfig& cfg);

/// The image the solver reports: (u + P^T v) / 2.
Image adal_average(const AdalState& state);

/// Run the solver until max(primal, dual) <= cfg.tol or cfg.max_iters.
///
/// One TraceRecord is appended per iteration, with objective, normalized
/// error, and PSNR evaluated on the averaged image. `reference` is the
/// image the error metrics are taken against; when null the noisy input b
/// is used. `stop` (optional) is checked after the tolerance test and ends
/// the run without setting `converged`.
SolveResult adal_solve(const Image& b, const SolverConfig& cfg,
                       const Image* reference = nullptr,
                       const StopPredicate& stop = {});

}  // namespace tvd
