#include "tvdenoise/grid_operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tvd {

namespace {

void require_length(std::span<const double> x, std::size_t expected, const char* what) {
    if (x.size() != expected)
        throw std::invalid_argument(std::string(what) + ": length " +
                                    std::to_string(x.size()) + ", expected " +
                                    std::to_string(expected));
}

}  // namespace

void apply_diff(const DiffOperator& op, std::span<const double> x, std::span<double> out) {
    require_length(x, op.size(), "apply_diff input");
    require_length(out, op.size(), "apply_diff output");
    const int n = op.run_length;
    for (int r = 0; r < op.runs; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * n;
        for (int k = 0; k + 1 < n; ++k) out[base + k] = x[base + k] - x[base + k + 1];
        out[base + n - 1] = 0.0;
    }
}

std::vector<double> apply_diff(const DiffOperator& op, std::span<const double> x) {
    std::vector<double> out(op.size());
    apply_diff(op, x, out);
    return out;
}

void apply_diff_adjoint(const DiffOperator& op, std::span<const double> y,
                        std::span<double> out) {
    require_length(y, op.size(), "apply_diff_adjoint input");
    require_length(out, op.size(), "apply_diff_adjoint output");
    const int n = op.run_length;
    for (int r = 0; r < op.runs; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * n;
        if (n == 1) {
            out[base] = 0.0;
            continue;
        }
        out[base] = y[base];
        for (int k = 1; k + 1 < n; ++k) out[base + k] = y[base + k] - y[base + k - 1];
        out[base + n - 1] = -y[base + n - 2];
    }
}

std::vector<double> apply_diff_adjoint(const DiffOperator& op, std::span<const double> y) {
    std::vector<double> out(op.size());
    apply_diff_adjoint(op, y, out);
    return out;
}

void col_to_row_major(int rows, int cols, std::span<const double> x, std::span<double> out) {
    const std::size_t count = static_cast<std::size_t>(rows) * cols;
    require_length(x, count, "col_to_row_major input");
    require_length(out, count, "col_to_row_major output");
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            out[static_cast<std::size_t>(i) * cols + j] =
                x[static_cast<std::size_t>(j) * rows + i];
}

std::vector<double> col_to_row_major(int rows, int cols, std::span<const double> x) {
    std::vector<double> out(static_cast<std::size_t>(rows) * cols);
    col_to_row_major(rows, cols, x, out);
    return out;
}

void row_to_col_major(int rows, int cols, std::span<const double> y, std::span<double> out) {
    const std::size_t count = static_cast<std::size_t>(rows) * cols;
    require_length(y, count, "row_to_col_major input");
    require_length(out, count, "row_to_col_major output");
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            out[static_cast<std::size_t>(j) * rows + i] =
                y[static_cast<std::size_t>(i) * cols + j];
}

std::vector<double> row_to_col_major(int rows, int cols, std::span<const double> y) {
    std::vector<double> out(static_cast<std::size_t>(rows) * cols);
    row_to_col_major(rows, cols, y, out);
    return out;
}

TridiagSystem shifted_gram(const DiffOperator& op, double shift) {
    if (!(shift > 0.0)) throw std::invalid_argument("shifted_gram: shift must be positive");
    const std::size_t count = op.size();
    TridiagSystem sys;
    sys.diag.assign(count, shift);
    sys.lower.assign(count > 0 ? count - 1 : 0, 0.0);
    sys.upper.assign(count > 0 ? count - 1 : 0, 0.0);
    const int n = op.run_length;
    if (n == 1) return sys;  // D is zero, the Gram matrix is just shift * I
    for (int r = 0; r < op.runs; ++r) {
        const std::size_t base = static_cast<std::size_t>(r) * n;
        sys.diag[base] += 1.0;
        for (int k = 1; k + 1 < n; ++k) sys.diag[base + k] += 2.0;
        sys.diag[base + n - 1] += 1.0;
        for (int k = 0; k + 1 < n; ++k) {
            sys.lower[base + k] = -1.0;
            sys.upper[base + k] = -1.0;
        }
    }
    return sys;
}

void thomas_solve(const TridiagSystem& sys, std::span<const double> rhs,
                  std::span<double> x, std::vector<double>& scratch) {
    const std::size_t n = sys.size();
    require_length(rhs, n, "thomas_solve rhs");
    require_length(x, n, "thomas_solve output");
    if (sys.lower.size() + 1 != n || sys.upper.size() + 1 != n)
        throw std::invalid_argument("thomas_solve: inconsistent band lengths");
    scratch.resize(n);

    auto check_pivot = [&](double pivot, std::size_t i) {
        const double row_scale = std::abs(sys.diag[i]) +
                                 (i > 0 ? std::abs(sys.lower[i - 1]) : 0.0) +
                                 (i + 1 < n ? std::abs(sys.upper[i]) : 0.0);
        if (std::abs(pivot) <= 1e-14 * row_scale || pivot == 0.0)
            throw std::runtime_error("thomas_solve: near-zero pivot at row " +
                                     std::to_string(i));
    };

    double pivot = sys.diag[0];
    check_pivot(pivot, 0);
    scratch[0] = n > 1 ? sys.upper[0] / pivot : 0.0;
    x[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i - 1] * scratch[i - 1];
        check_pivot(pivot, i);
        scratch[i] = i + 1 < n ? sys.upper[i] / pivot : 0.0;
        x[i] = (rhs[i] - sys.lower[i - 1] * x[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

std::vector<double> thomas_solve(const TridiagSystem& sys, std::span<const double> rhs) {
    std::vector<double> x(sys.size());
    std::vector<double> scratch;
    thomas_solve(sys, rhs, x, scratch);
    return x;
}

}  // namespace tvd
