#include "tvdenoise/split_bregman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tvdenoise/grid_operators.hpp"
#include "tvdenoise/metrics.hpp"

namespace tvd {

namespace {

double norm2(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

void require_consistent(const SbState& s, const Image& b) {
    const std::size_t count = b.size();
    if (s.rows != b.rows || s.cols != b.cols || s.u.size() != count ||
        s.dx.size() != count || s.dy.size() != count || s.rx.size() != count ||
        s.ry.size() != count)
        throw std::invalid_argument("split_bregman: state does not match image shape");
}

// Buffers shared across the iterations of one solve.
struct Workspace {
    std::vector<double> gx, gy, ax, ay, rhs, row_frame;

    explicit Workspace(std::size_t count)
        : gx(count), gy(count), ax(count), ay(count), rhs(count), row_frame(count) {}
};

// Difference stencils of u in the image frame: gx within columns, gy within
// rows mapped back through P^T.
void gradients(const SbState& s, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const DiffOperator row_op{s.cols, s.rows};
    apply_diff(col_op, s.u, ws.gx);
    col_to_row_major(s.rows, s.cols, s.u, ws.row_frame);
    apply_diff(row_op, ws.row_frame, ws.ax);  // ax as a row-frame scratch
    row_to_col_major(s.rows, s.cols, ws.ax, ws.gy);
}

void build_rhs(const SbState& s, const Image& b, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const DiffOperator row_op{s.cols, s.rows};
    const std::size_t count = s.u.size();
    for (std::size_t i = 0; i < count; ++i) ws.ax[i] = s.dx[i] - s.rx[i];
    apply_diff_adjoint(col_op, ws.ax, ws.rhs);
    for (std::size_t i = 0; i < count; ++i) ws.ax[i] = s.dy[i] - s.ry[i];
    col_to_row_major(s.rows, s.cols, ws.ax, ws.row_frame);
    apply_diff_adjoint(row_op, ws.row_frame, ws.ay);
    row_to_col_major(s.rows, s.cols, ws.ay, ws.ax);
    for (std::size_t i = 0; i < count; ++i) ws.rhs[i] += s.mu * b.data[i] + ws.ax[i];
}

// `cycles` sweeps on (mu I + L) u = rhs, ascending column-major pixel order.
void relax(SbState& s, const Workspace& ws, int cycles) {
    const int n = s.rows, m = s.cols;
    for (int cycle = 0; cycle < cycles; ++cycle) {
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < n; ++i) {
                const std::size_t idx = static_cast<std::size_t>(j) * n + i;
                double acc = ws.rhs[idx];
                int degree = 0;
                if (i > 0) { acc += s.u[idx - 1]; ++degree; }
                if (i + 1 < n) { acc += s.u[idx + 1]; ++degree; }
                if (j > 0) { acc += s.u[idx - static_cast<std::size_t>(n)]; ++degree; }
                if (j + 1 < m) { acc += s.u[idx + static_cast<std::size_t>(n)]; ++degree; }
                s.u[idx] = acc / (s.mu + degree);
            }
        }
    }
}

void step(SbState& s, const Image& b, TvModel model, double lambda, Workspace& ws) {
    build_rhs(s, b, ws);
    relax(s, ws, s.sweeps);

    gradients(s, ws);
    const std::size_t count = s.u.size();
    const double threshold = lambda * s.mu;
    for (std::size_t i = 0; i < count; ++i) {
        ws.ax[i] = ws.gx[i] + s.rx[i];
        ws.ay[i] = ws.gy[i] + s.ry[i];
    }
    if (model == TvModel::anisotropic) {
        soft_threshold(ws.ax, threshold, s.dx);
        soft_threshold(ws.ay, threshold, s.dy);
    } else {
        block_soft_threshold(ws.ax, ws.ay, threshold, s.dx, s.dy);
    }

    for (std::size_t i = 0; i < count; ++i) {
        s.rx[i] += ws.gx[i] - s.dx[i];
        s.ry[i] += ws.gy[i] - s.dy[i];
    }
}

}  // namespace

SbState sb_init(const Image& b, double mu, int sweeps) {
    if (!(mu > 0.0)) throw std::invalid_argument("sb_init: mu must be positive");
    if (sweeps < 1) throw std::invalid_argument("sb_init: sweeps must be >= 1");
    SbState s;
    s.rows = b.rows;
    s.cols = b.cols;
    s.u = b.data;
    const std::size_t count = b.size();
    s.dx.assign(count, 0.0);
    s.dy.assign(count, 0.0);
    s.rx.assign(count, 0.0);
    s.ry.assign(count, 0.0);
    s.mu = mu;
    s.sweeps = sweeps;
    return s;
}

void gauss_seidel_sweep(SbState& s, const Image& b, int cycles) {
    require_consistent(s, b);
    if (cycles < 1) throw std::invalid_argument("gauss_seidel_sweep: cycles must be >= 1");
    Workspace ws(s.u.size());
    build_rhs(s, b, ws);
    relax(s, ws, cycles);
}

void sb_step(SbState& s, const Image& b, TvModel model, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("sb_step: lambda must be positive");
    require_consistent(s, b);
    Workspace ws(s.u.size());
    step(s, b, model, lambda, ws);
}

SolveResult sb_solve(const Image& b, const SbConfig& cfg, const Image* reference,
                     const StopPredicate& stop) {
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("sb_solve: lambda must be positive");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("sb_solve: tol must be positive");
    if (cfg.max_iters < 1) throw std::invalid_argument("sb_solve: max_iters must be >= 1");
    const Image& ref = reference ? *reference : b;
    if (!ref.same_shape(b)) throw std::invalid_argument("sb_solve: reference shape mismatch");
    const bool ref_usable = norm2(ref.data) > 0.0;

    SbState state = sb_init(b, cfg.mu, cfg.sweeps);
    const std::size_t count = state.u.size();
    Workspace ws(count);
    SolveResult result;
    result.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iters, 4096)));

    std::vector<double> dx_prev(count), dy_prev(count);
    for (int k = 1; k <= cfg.max_iters; ++k) {
        dx_prev = state.dx;
        dy_prev = state.dy;
        step(state, b, cfg.model, cfg.lambda, ws);

        gradients(state, ws);
        auto relative_gap = [count](std::span<const double> lhs, std::span<const double> aux) {
            double gap = 0.0, refn = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                const double d = lhs[i] - aux[i];
                gap += d * d;
                refn += lhs[i] * lhs[i];
            }
            return std::sqrt(gap) / std::max(1.0, std::sqrt(refn));
        };
        const double primal =
            std::max(relative_gap(ws.gx, state.dx), relative_gap(ws.gy, state.dy));
        auto change = [count](std::span<const double> a, std::span<const double> c) {
            double sum = 0.0;
            for (std::size_t i = 0; i < count; ++i) {
                const double d = a[i] - c[i];
                sum += d * d;
            }
            return std::sqrt(sum);
        };
        // r/mu plays the multiplier role of the three-constraint solver
        const double dual_num = std::max(change(state.dx, dx_prev), change(state.dy, dy_prev)) /
                                state.mu;
        const double dual_den = std::max({1.0, norm2(state.rx) / state.mu,
                                          norm2(state.ry) / state.mu});
        const double dual = dual_num / dual_den;

        Image current(state.rows, state.cols);
        current.data = state.u;
        TraceRecord rec;
        rec.iter = k;
        rec.objective = objective(current, b, cfg.lambda, cfg.model);
        rec.normalized_error = ref_usable ? normalized_error(current, ref)
                                          : std::numeric_limits<double>::quiet_NaN();
        rec.psnr = psnr(current, ref);
        rec.primal_residual = primal;
        rec.dual_residual = dual;
        result.trace.push_back(rec);

        if (std::max(primal, dual) <= cfg.tol) {
            result.converged = true;
            break;
        }
        if (stop && stop(rec)) break;
    }
    result.iterations = static_cast<int>(result.trace.size());
    result.u = Image(state.rows, state.cols);
    result.u.data = state.u;
    return result;
}

}  // namespace tvd
