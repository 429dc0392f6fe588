#include "tvdenoise/prox.hpp"

#include <cmath>
#include <stdexcept>

#include "tvdenoise/grid_operators.hpp"

namespace tvd {

void soft_threshold(std::span<const double> x, double t, std::span<double> out) {
    if (!(t >= 0.0)) throw std::invalid_argument("soft_threshold: t must be non-negative");
    if (out.size() != x.size())
        throw std::invalid_argument("soft_threshold: output length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double shrunk = std::abs(x[i]) - t;
        out[i] = shrunk > 0.0 ? std::copysign(shrunk, x[i]) : 0.0;
    }
}

std::vector<double> soft_threshold(std::span<const double> x, double t) {
    std::vector<double> out(x.size());
    soft_threshold(x, t, out);
    return out;
}

void block_soft_threshold(std::span<const double> dx, std::span<const double> dy,
                          double t, std::span<double> out_dx, std::span<double> out_dy) {
    if (!(t >= 0.0))
        throw std::invalid_argument("block_soft_threshold: t must be non-negative");
    if (dx.size() != dy.size() || out_dx.size() != dx.size() || out_dy.size() != dx.size())
        throw std::invalid_argument("block_soft_threshold: length mismatch");
    for (std::size_t i = 0; i < dx.size(); ++i) {
        const double norm = std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
        if (norm > t) {
            const double scale = (norm - t) / norm;
            out_dx[i] = scale * dx[i];
            out_dy[i] = scale * dy[i];
        } else {
            // covers the zero block: 0/0 is defined as 0
            out_dx[i] = 0.0;
            out_dy[i] = 0.0;
        }
    }
}

GradientPair block_soft_threshold(std::span<const double> dx,
                                  std::span<const double> dy, double t) {
    GradientPair out{std::vector<double>(dx.size()), std::vector<double>(dy.size())};
    block_soft_threshold(dx, dy, t, out.dx, out.dy);
    return out;
}

double tv_anisotropic(const Image& u) {
    const DiffOperator col_op{u.rows, u.cols};
    const DiffOperator row_op{u.cols, u.rows};
    const std::vector<double> gx = apply_diff(col_op, u.data);
    const std::vector<double> gy = apply_diff(row_op, col_to_row_major(u.rows, u.cols, u.data));
    double total = 0.0;
    for (double g : gx) total += std::abs(g);
    for (double g : gy) total += std::abs(g);
    return total;
}

double tv_isotropic(const Image& u) {
    const DiffOperator col_op{u.rows, u.cols};
    const DiffOperator row_op{u.cols, u.rows};
    const std::vector<double> gx = apply_diff(col_op, u.data);
    const std::vector<double> gy_row =
        apply_diff(row_op, col_to_row_major(u.rows, u.cols, u.data));
    // pair the two components at the same pixel
    const std::vector<double> gy = row_to_col_major(u.rows, u.cols, gy_row);
    double total = 0.0;
    for (std::size_t i = 0; i < gx.size(); ++i)
        total += std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
    return total;
}

double objective(const Image& u, const Image& b, double lambda, TvModel model) {
    if (!u.same_shape(b)) throw std::invalid_argument("objective: shape mismatch");
    const double tv = model == TvModel::anisotropic ? tv_anisotropic(u) : tv_isotropic(u);
    double fidelity = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u.data[i] - b.data[i];
        fidelity += d * d;
    }
    return lambda * tv + 0.5 * fidelity;
}

}  // namespace tvd
