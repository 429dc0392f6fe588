#pragma once

#include <string_view>
#include <vector>

#include "tvdenoise/image.hpp"

namespace tvd {

/// Deterministic synthetic test images (no seed dependence). Known names:
///
/// - "squares": top-left floor(n/2) x floor(m/2) block at 0, rest 255.
/// - "gradient-ramp": horizontal linear ramp, 255 * j / (m - 1).
/// - "checkerboard": unit checkerboard, 255 where (i + j) is even, else 0.
/// - "edges-plus-texture": left third uniform 64; middle third uniform 192
///   with an inset block at 16 (rows [n/3, 2n/3), columns
///   [m/3 + m/12, 2m/3 - m/12)); right third mid-gray hash texture,
///   128 + (splitmix64(i * 2^32 + j) mod 97) - 48.
///
/// Indices are 0-based and divisions are integer. Unknown names throw
/// std::invalid_argument.
Image synth_image(std::string_view name, int rows, int cols);

/// The recognized generator names, in documentation order.
const std::vector<std::string>& synth_image_names();

}  // namespace tvd
