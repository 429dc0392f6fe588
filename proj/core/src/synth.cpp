#include "tvdenoise/synth.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvd {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Image squares(int n, int m) {
    Image img(n, m, 255.0);
    for (int j = 0; j < m / 2; ++j)
        for (int i = 0; i < n / 2; ++i) img.at(i, j) = 0.0;
    return img;
}

Image gradient_ramp(int n, int m) {
    Image img(n, m);
    for (int j = 0; j < m; ++j) {
        const double v = m > 1 ? 255.0 * j / (m - 1) : 0.0;
        for (int i = 0; i < n; ++i) img.at(i, j) = v;
    }
    return img;
}

Image checkerboard(int n, int m) {
    Image img(n, m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) img.at(i, j) = (i + j) % 2 == 0 ? 255.0 : 0.0;
    return img;
}

Image edges_plus_texture(int n, int m) {
    Image img(n, m);
    const int third = m / 3, two_thirds = 2 * m / 3;
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            double v;
            if (j < third) {
                v = 64.0;
            } else if (j < two_thirds) {
                v = 192.0;
                const bool in_rows = i >= n / 3 && i < 2 * n / 3;
                const bool in_cols = j >= third + m / 12 && j < two_thirds - m / 12;
                if (in_rows && in_cols) v = 16.0;
            } else {
                const std::uint64_t h =
                    splitmix64((static_cast<std::uint64_t>(i) << 32) |
                               static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)));
                v = 128.0 + static_cast<double>(h % 97) - 48.0;
            }
            img.at(i, j) = v;
        }
    }
    return img;
}

}  // namespace

const std::vector<std::string>& synth_image_names() {
    static const std::vector<std::string> names = {"squares", "gradient-ramp",
                                                   "checkerboard", "edges-plus-texture"};
    return names;
}

Image synth_image(std::string_view name, int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("synth_image: dimensions must be positive");
    if (name == "squares") return squares(rows, cols);
    if (name == "gradient-ramp") return gradient_ramp(rows, cols);
    if (name == "checkerboard") return checkerboard(rows, cols);
    if (name == "edges-plus-texture") return edges_plus_texture(rows, cols);
    throw std::invalid_argument("synth_image: unknown generator '" + std::string(name) + "'");
}

}  // namespace tvd
