#pragma once

#include <span>
#include <vector>

#include "tvdenoise/image.hpp"

namespace tvd {

/// Which total-variation norm the model uses: the 1-norm or the 2-norm of
/// each pixel's (horizontal, vertical) difference pair.
enum class TvModel { anisotropic, isotropic };

/// Per-pixel auxiliary gradient variables.
struct GradientPair {
    std::vector<double> dx;
    std::vector<double> dy;
};

/// Componentwise soft threshold: max(|x_i| - t, 0) * sign(x_i).
///
/// This is the proximal map of t * |.|; t must be non-negative.
void soft_threshold(std::span<const double> x, double t, std::span<double> out);
std::vector<double> soft_threshold(std::span<const double> x, double t);

/// Blockwise soft threshold (group-lasso prox): the 2-vector
/// (dx_i, dy_i) is rescaled to norm max(||.|| - t, 0); a zero block maps
/// to zero. Inputs must be index-aligned (same vectorization frame) and of
/// equal length; t must be non-negative.
void block_soft_threshold(std::span<const double> dx, std::span<const double> dy,
                          double t, std::span<double> out_dx, std::span<double> out_dy);
GradientPair block_soft_threshold(std::span<const double> dx,
                                  std::span<const double> dy, double t);

/// Anisotropic TV: ||D u||_1 + ||D (P u)||_1 with the grid-operators
/// difference convention, so this is exactly the regularizer the solvers
/// minimize.
double tv_anisotropic(const Image& u);

/// Isotropic TV: sum over pixels of the Euclidean norm of the
/// (within-column, within-row) difference pair; the row-frame component is
/// mapped back through P^T so the pair is taken at the same pixel.
double tv_isotropic(const Image& u);

/// lambda * TV(u) + 1/2 ||u - b||^2.
double objective(const Image& u, const Image& b, double lambda, TvModel model);

}  // namespace tvd
