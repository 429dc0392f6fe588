#include "tvdenoise/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tvd {

Image add_gaussian_noise(const Image& u0, const NoiseSpec& spec) {
    if (!(spec.sigma >= 0.0))
        throw std::invalid_argument("add_gaussian_noise: sigma must be non-negative");
    Image b = u0;
    if (spec.sigma == 0.0) return b;

    std::mt19937_64 rng(spec.seed);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    const std::size_t count = b.size();
    for (std::size_t i = 0; i < count; i += 2) {
        const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        b.data[i] += spec.sigma * radius * std::cos(angle);
        if (i + 1 < count) b.data[i + 1] += spec.sigma * radius * std::sin(angle);
    }
    return b;
}

double normalized_error(const Image& u, const Image& u0) {
    if (!u.same_shape(u0)) throw std::invalid_argument("normalized_error: shape mismatch");
    double err = 0.0, ref = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u.data[i] - u0.data[i];
        err += d * d;
        ref += u0.data[i] * u0.data[i];
    }
    if (ref == 0.0)
        throw std::domain_error("normalized_error: reference image is identically zero");
    return std::sqrt(err) / std::sqrt(ref);
}

double psnr(const Image& u, const Image& u0) {
    if (!u.same_shape(u0)) throw std::invalid_argument("psnr: shape mismatch");
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double d = u.data[i] - u0.data[i];
        err += d * d;
    }
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    const double pixels = static_cast<double>(u.size());
    return 20.0 * std::log10(255.0 * std::sqrt(pixels) / std::sqrt(err));
}

}  // namespace tvd
