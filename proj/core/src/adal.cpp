#include "tvdenoise/adal.hpp"

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

void validate(const SolverConfig& cfg) {
    if (!(cfg.lambda > 0.0)) throw std::invalid_argument("SolverConfig: lambda must be positive");
    if (!(cfg.mu1 > 0.0)) throw std::invalid_argument("SolverConfig: mu1 must be positive");
    if (!(cfg.mu2 > 0.0)) throw std::invalid_argument("SolverConfig: mu2 must be positive");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");
    if (cfg.max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

void require_consistent(const AdalState& state, const Image& b) {
    const std::size_t count = b.size();
    if (state.rows != b.rows || state.cols != b.cols || state.u.size() != count ||
        state.v.size() != count || state.dx.size() != count || state.dy.size() != count ||
        state.mult.gx.size() != count || state.mult.gy.size() != count ||
        state.mult.gz.size() != count)
        throw std::invalid_argument("adal: state does not match image shape");
}

// Buffers and assembled systems shared across the iterations of one solve.
struct Workspace {
    TridiagSystem sys_u;  // D^T D + (mu1/mu2 + mu1) I, column frame
    TridiagSystem sys_v;  // D^T D + (mu1/mu2) I, row frame
    std::vector<double> arg, rhs, back, scratch;

    Workspace(const AdalState& s, const SolverConfig& cfg) {
        const DiffOperator col_op{s.rows, s.cols};
        const DiffOperator row_op{s.cols, s.rows};
        const double c = cfg.mu1 / cfg.mu2;
        sys_u = shifted_gram(col_op, c + cfg.mu1);
        sys_v = shifted_gram(row_op, c);
        const std::size_t count = s.u.size();
        arg.resize(count);
        rhs.resize(count);
        back.resize(count);
    }
};

// v-system: (D^T D + (mu1/mu2) I) v = D^T(dy - mu1*gy) + mu1*gz + (mu1/mu2) P u
void solve_v(AdalState& s, const SolverConfig& cfg, Workspace& ws) {
    const DiffOperator row_op{s.cols, s.rows};
    const double c = cfg.mu1 / cfg.mu2;
    const std::size_t count = s.v.size();

    for (std::size_t i = 0; i < count; ++i) ws.arg[i] = s.dy[i] - cfg.mu1 * s.mult.gy[i];
    apply_diff_adjoint(row_op, ws.arg, ws.rhs);
    col_to_row_major(s.rows, s.cols, s.u, ws.arg);  // P u
    for (std::size_t i = 0; i < count; ++i)
        ws.rhs[i] += cfg.mu1 * s.mult.gz[i] + c * ws.arg[i];

    thomas_solve(ws.sys_v, ws.rhs, s.v, ws.scratch);
}

// u-system: (D^T D + (mu1/mu2 + mu1) I) u
//             = mu1*b + D^T(dx - mu1*gx) + P^T((mu1/mu2) v - mu1*gz)
void solve_u(AdalState& s, const Image& b, const SolverConfig& cfg, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const double c = cfg.mu1 / cfg.mu2;
    const std::size_t count = s.u.size();

    for (std::size_t i = 0; i < count; ++i) ws.arg[i] = s.dx[i] - cfg.mu1 * s.mult.gx[i];
    apply_diff_adjoint(col_op, ws.arg, ws.rhs);
    for (std::size_t i = 0; i < count; ++i) ws.arg[i] = c * s.v[i] - cfg.mu1 * s.mult.gz[i];
    row_to_col_major(s.rows, s.cols, ws.arg, ws.back);  // P^T (...)
    for (std::size_t i = 0; i < count; ++i) ws.rhs[i] += cfg.mu1 * b.data[i] + ws.back[i];

    thomas_solve(ws.sys_u, ws.rhs, s.u, ws.scratch);
}

void update_multipliers(AdalState& s, const SolverConfig& cfg, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const DiffOperator row_op{s.cols, s.rows};
    const std::size_t count = s.u.size();

    apply_diff(col_op, s.u, ws.arg);
    for (std::size_t i = 0; i < count; ++i)
        s.mult.gx[i] += (ws.arg[i] - s.dx[i]) / cfg.mu1;
    apply_diff(row_op, s.v, ws.arg);
    for (std::size_t i = 0; i < count; ++i)
        s.mult.gy[i] += (ws.arg[i] - s.dy[i]) / cfg.mu1;
    col_to_row_major(s.rows, s.cols, s.u, ws.arg);
    for (std::size_t i = 0; i < count; ++i)
        s.mult.gz[i] += (ws.arg[i] - s.v[i]) / cfg.mu2;
}

void step_anisotropic(AdalState& s, const Image& b, const SolverConfig& cfg, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const DiffOperator row_op{s.cols, s.rows};
    const double threshold = cfg.lambda * cfg.mu1;
    const std::size_t count = s.u.size();

    // d_x from the current u
    apply_diff(col_op, s.u, ws.arg);
    for (std::size_t i = 0; i < count; ++i) ws.arg[i] += cfg.mu1 * s.mult.gx[i];
    soft_threshold(ws.arg, threshold, s.dx);

    // v from the previous d_y and u
    solve_v(s, cfg, ws);

    // d_y from the new v
    apply_diff(row_op, s.v, ws.arg);
    for (std::size_t i = 0; i < count; ++i) ws.arg[i] += cfg.mu1 * s.mult.gy[i];
    soft_threshold(ws.arg, threshold, s.dy);

    // u from the new d_x and v
    solve_u(s, b, cfg, ws);

    update_multipliers(s, cfg, ws);
}

void step_isotropic(AdalState& s, const Image& b, const SolverConfig& cfg, Workspace& ws) {
    const DiffOperator col_op{s.rows, s.cols};
    const DiffOperator row_op{s.cols, s.rows};
    const double threshold = cfg.lambda * cfg.mu1;
    const std::size_t count = s.u.size();

    // joint block threshold of (Du + mu1*gx, Dv + mu1*gy), paired per pixel;
    // v here is the previous iterate
    apply_diff(col_op, s.u, ws.arg);
    for (std::size_t i = 0; i < count; ++i) ws.arg[i] += cfg.mu1 * s.mult.gx[i];
    apply_diff(row_op, s.v, ws.rhs);
    for (std::size_t i = 0; i < count; ++i) ws.rhs[i] += cfg.mu1 * s.mult.gy[i];
    row_to_col_major(s.rows, s.cols, ws.rhs, ws.back);

    block_soft_threshold(ws.arg, ws.back, threshold, s.dx, ws.rhs);
    col_to_row_major(s.rows, s.cols, ws.rhs, s.dy);

    // v from the new d_y, then u from the new d_x and v
    solve_v(s, cfg, ws);
    solve_u(s, b, cfg, ws);

    update_multipliers(s, cfg, ws);
}

}  // namespace

SolverConfig default_config(TvModel model) {
    SolverConfig cfg;
    cfg.model = model;
    cfg.mu1 = model == TvModel::anisotropic ? 0.2 : 0.3;
    return cfg;
}

AdalState adal_init(const Image& b) {
    if (b.rows < 2 || b.cols < 2)
        throw std::invalid_argument("adal_init: image must be at least 2x2");
    AdalState s;
    s.rows = b.rows;
    s.cols = b.cols;
    const std::size_t count = b.size();
    s.u = b.data;
    s.v = col_to_row_major(b.rows, b.cols, b.data);
    s.dx.assign(count, 0.0);
    s.dy.assign(count, 0.0);
    s.mult.gx.assign(count, 0.0);
    s.mult.gy.assign(count, 0.0);
    s.mult.gz.assign(count, 0.0);
    return s;
}

void adal_step_anisotropic(AdalState& s, const Image& b, const SolverConfig& cfg) {
    require_consistent(s, b);
    Workspace ws(s, cfg);
    step_anisotropic(s, b, cfg, ws);
}

void adal_step_isotropic(AdalState& s, const Image& b, const SolverConfig& cfg) {
    require_consistent(s, b);
    Workspace ws(s, cfg);
    step_isotropic(s, b, cfg, ws);
}

void adal_step(AdalState& s, const Image& b, const SolverConfig& cfg) {
    if (cfg.model == TvModel::anisotropic)
        adal_step_anisotropic(s, b, cfg);
    else
        adal_step_isotropic(s, b, cfg);
}

Residuals adal_residuals(const AdalState& cur, const AdalState& prev,
                         const SolverConfig& cfg) {
    const DiffOperator col_op{cur.rows, cur.cols};
    const DiffOperator row_op{cur.cols, cur.rows};
    const std::size_t count = cur.u.size();

    auto relative_gap = [count](std::span<const double> lhs, std::span<const double> aux) {
        double gap = 0.0, ref = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = lhs[i] - aux[i];
            gap += d * d;
            ref += lhs[i] * lhs[i];
        }
        return std::sqrt(gap) / std::max(1.0, std::sqrt(ref));
    };

    const std::vector<double> du = apply_diff(col_op, cur.u);
    const std::vector<double> dv = apply_diff(row_op, cur.v);
    const std::vector<double> pu = col_to_row_major(cur.rows, cur.cols, cur.u);
    const double primal = std::max({relative_gap(du, cur.dx), relative_gap(dv, cur.dy),
                                    relative_gap(pu, cur.v)});

    auto change = [count](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double d = a[i] - b[i];
            s += d * d;
        }
        return std::sqrt(s);
    };
    const double dual_num = std::max({change(cur.dx, prev.dx) / cfg.mu1,
                                      change(cur.dy, prev.dy) / cfg.mu1,
                                      change(cur.v, prev.v) / cfg.mu2});
    const double dual_den = std::max({1.0, norm2(cur.mult.gx), norm2(cur.mult.gy),
                                      norm2(cur.mult.gz)});
    return Residuals{primal, dual_num / dual_den};
}

Image adal_average(const AdalState& s) {
    Image out(s.rows, s.cols);
    row_to_col_major(s.rows, s.cols, s.v, out.data);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.data[i] = 0.5 * (s.u[i] + out.data[i]);
    return out;
}

SolveResult adal_solve(const Image& b, const SolverConfig& cfg, const Image* reference,
                       const StopPredicate& stop) {
    validate(cfg);
    const Image& ref = reference ? *reference : b;
    if (!ref.same_shape(b)) throw std::invalid_argument("adal_solve: reference shape mismatch");
    const bool ref_usable = norm2(ref.data) > 0.0;

    AdalState state = adal_init(b);
    Workspace ws(state, cfg);
    SolveResult result;
    result.trace.reserve(static_cast<std::size_t>(std::min(cfg.max_iters, 4096)));

    AdalState prev = state;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        prev = state;
        if (cfg.model == TvModel::anisotropic)
            step_anisotropic(state, b, cfg, ws);
        else
            step_isotropic(state, b, cfg, ws);
        const Residuals res = adal_residuals(state, prev, cfg);

        const Image avg = adal_average(state);
        TraceRecord rec;
        rec.iter = k;
        rec.objective = objective(avg, b, cfg.lambda, cfg.model);
        rec.normalized_error =
            ref_usable ? normalized_error(avg, ref) : std::numeric_limits<double>::quiet_NaN();
        rec.psnr = psnr(avg, ref);
        rec.primal_residual = res.primal;
        rec.dual_residual = res.dual;
        result.trace.push_back(rec);

        if (std::max(res.primal, res.dual) <= cfg.tol) {
            result.converged = true;
            break;
        }
        if (stop && stop(rec)) break;
    }
    result.iterations = static_cast<int>(result.trace.size());
    result.u = adal_average(state);
    return result;
}

}  // namespace tvd
