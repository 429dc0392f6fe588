#pragma once

#include <cstdint>

#include "tvdenoise/image.hpp"

namespace tvd {

/// Seeded additive Gaussian noise.
struct NoiseSpec {
    double sigma = 0.0;       ///< standard deviation in intensity units
    std::uint64_t seed = 0;
};

/// b = u0 + eps with eps i.i.d. N(0, sigma^2). Values are not clamped.
///
/// Generator: mt19937_64 seeded with spec.seed; uniforms are built from the
/// top 53 bits of each draw; normals come from the Box-Muller transform,
/// consumed in pairs in pixel order. Identical seeds give identical images.
Image add_gaussian_noise(const Image& u0, const NoiseSpec& spec);

/// ||u - u0||_2 / ||u0||_2. Throws std::domain_error when u0 is identically
/// zero.
double normalized_error(const Image& u, const Image& u0);

/// 20 * log10(255 * sqrt(n m) / ||u - u0||_2) in dB; +infinity when u == u0.
double psnr(const Image& u, const Image& u0);

}  // namespace tvd
