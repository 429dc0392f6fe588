#include "tvdenoise/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "number_format.hpp"

namespace tvd {

namespace {

bool is_pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Cursor over the raw file bytes; all errors carry the current offset.
struct PgmCursor {
    const std::string& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    // Whitespace and '#' comments (which run to end of line) separate
    // header tokens.
    void skip_separators() {
        while (!eof()) {
            char c = bytes[pos];
            if (is_pnm_space(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    unsigned parse_uint(const char* what, unsigned max_value) {
        skip_separators();
        std::size_t start = pos;
        if (eof()) throw PgmError(std::string("missing ") + what, start);
        if (!std::isdigit(static_cast<unsigned char>(bytes[pos])))
            throw PgmError(std::string("expected digit for ") + what, start);
        std::uint64_t value = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            value = value * 10 + static_cast<std::uint64_t>(bytes[pos] - '0');
            if (value > 10u * max_value + 9u)
                throw PgmError(std::string(what) + " out of range", start);
            ++pos;
        }
        if (value > max_value)
            throw PgmError(std::string(what) + " out of range", start);
        return static_cast<unsigned>(value);
    }
};

}  // namespace

Image read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream tmp;
    tmp << in.rdbuf();
    const std::string bytes = tmp.str();

    PgmCursor cur{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        throw PgmError("not a PGM file (expected P5 or P2 magic)", 0);
    const bool binary = bytes[1] == '5';
    cur.pos = 2;

    const unsigned cols = cur.parse_uint("width", 1u << 20);
    const unsigned rows = cur.parse_uint("height", 1u << 20);
    if (cols == 0 || rows == 0)
        throw PgmError("image dimensions must be positive", cur.pos);

    cur.skip_separators();
    const std::size_t maxval_at = cur.pos;
    const unsigned maxval = cur.parse_uint("maxval", 65535);
    if (maxval == 0) throw PgmError("invalid maxval 0", maxval_at);
    if (maxval > 255)
        throw PgmError("unsupported maxval " + std::to_string(maxval) +
                           " (only maxval <= 255 is supported)",
                       maxval_at);

    Image img(static_cast<int>(rows), static_cast<int>(cols));
    const std::size_t count = img.size();

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.eof() || !is_pnm_space(bytes[cur.pos]))
            throw PgmError("expected single whitespace before raster", cur.pos);
        ++cur.pos;
        if (bytes.size() - cur.pos < count)
            throw PgmError("truncated raster: expected " + std::to_string(count) +
                               " bytes, got " + std::to_string(bytes.size() - cur.pos),
                           bytes.size());
        for (std::size_t s = 0; s < count; ++s) {
            const auto value = static_cast<unsigned char>(bytes[cur.pos + s]);
            if (value > maxval)
                throw PgmError("sample exceeds maxval", cur.pos + s);
            const std::size_t r = s / cols, c = s % cols;
            img.data[c * rows + r] = static_cast<double>(value);
        }
    } else {
        for (std::size_t s = 0; s < count; ++s) {
            cur.skip_separators();
            if (cur.eof())
                throw PgmError("truncated raster: expected " + std::to_string(count) +
                                   " samples, got " + std::to_string(s),
                               bytes.size());
            const std::size_t at = cur.pos;
            const unsigned value = cur.parse_uint("sample", 65535);
            if (value > maxval) throw PgmError("sample exceeds maxval", at);
            const std::size_t r = s / cols, c = s % cols;
            img.data[c * rows + r] = static_cast<double>(value);
        }
    }
    return img;
}

void write_pgm(const Image& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "P5\n" << img.cols << ' ' << img.rows << "\n255\n";
    std::string raster(img.size(), '\0');
    for (int i = 0; i < img.rows; ++i) {
        for (int j = 0; j < img.cols; ++j) {
            double v = img.at(i, j);
            v = v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v);
            const double rounded = std::floor(v + 0.5);  // half-up
            raster[static_cast<std::size_t>(i) * img.cols + j] =
                static_cast<char>(static_cast<unsigned char>(rounded));
        }
    }
    out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

void write_trace_csv(const std::vector<TraceRecord>& records,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "iter,objective,normalized_error,psnr,primal_residual,dual_residual\n";
    for (const TraceRecord& r : records) {
        out << detail::repr(r.iter) << ',' << detail::repr(r.objective) << ','
            << detail::repr(r.normalized_error) << ',' << detail::repr(r.psnr) << ','
            << detail::repr(r.primal_residual) << ',' << detail::repr(r.dual_residual)
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace tvd
