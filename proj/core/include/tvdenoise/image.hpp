#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvd {

/// 2-D grayscale image stored as a column-major vector of real intensities.
///
/// Pixel (i, j) (0-based row i, column j) lives at data[j * rows + i].
/// Intensities are nominally on the [0, 255] scale but are neither clamped
/// nor rounded while a solver iterates; quantization happens only when the
/// image is written as a PGM file.
struct Image {
    int rows = 0;  ///< n, number of pixel rows (>= 1)
    int cols = 0;  ///< m, number of pixel columns (>= 1)
    std::vector<double> data;  ///< column-major, length rows * cols

    Image() = default;
    Image(int n, int m, double fill = 0.0)
        : rows(n), cols(m), data(static_cast<std::size_t>(n) * m, fill) {
        if (n < 1 || m < 1) throw std::invalid_argument("Image: dimensions must be positive");
    }

    std::size_t size() const { return data.size(); }

    double& at(int i, int j) { return data[static_cast<std::size_t>(j) * rows + i]; }
    double at(int i, int j) const { return data[static_cast<std::size_t>(j) * rows + i]; }

    bool same_shape(const Image& other) const {
        return rows == other.rows && cols == other.cols;
    }
};

/// Parse failure while reading a PGM file; `offset` is the byte position
/// of the offending content.
class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Read a binary (P5) or ASCII (P2) PGM file with maxval <= 255.
///
/// The row-major PGM raster is re-ordered into the column-major data
/// vector. Sample values are stored as reals without rescaling, so a
/// maxval-255 file yields intensities in [0, 255]. Malformed input throws
/// PgmError naming the offending byte offset; I/O failures throw
/// std::runtime_error.
Image read_pgm(const std::filesystem::path& path);

/// Write a binary (P5) PGM with maxval 255.
///
/// Each intensity is clamped to [0, 255] and then rounded half-up to the
/// nearest integer, so writing an integer-valued in-range image and reading
/// it back reproduces the image exactly.
void write_pgm(const Image& img, const std::filesystem::path& path);

/// One row of a solver convergence trace.
struct TraceRecord {
    int iter = 0;                   ///< iteration number, 1-based within a solve
    double objective = 0.0;         ///< lambda * TV(u) + 1/2 ||u - b||^2
    double normalized_error = 0.0;  ///< ||u - ref|| / ||ref||
    double psnr = 0.0;              ///< dB; +inf when u == ref
    double primal_residual = 0.0;   ///< relative constraint violation
    double dual_residual = 0.0;     ///< relative multiplier-change measure
};

/// Write trace records as CSV: header
/// `iter,objective,normalized_error,psnr,primal_residual,dual_residual`
/// then one row per record. Numbers are rendered in shortest round-trip
/// decimal form, lines end with LF, nothing is quoted.
void write_trace_csv(const std::vector<TraceRecord>& records,
                     const std::filesystem::path& path);

}  // namespace tvd
