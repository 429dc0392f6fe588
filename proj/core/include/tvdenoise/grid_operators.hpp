#pragma once

#include <span>
#include <vector>

namespace tvd {

/// Block-diagonal forward-difference operator under the Neumann boundary
/// condition.
///
/// Represents `runs` copies of the run_length x run_length upper bidiagonal
/// block with +1 on the diagonal and -1 on the super-diagonal, except that
/// the last row of each block is zero (no difference across a run end).
/// Applied to a column-major image vector with run_length = rows and
/// runs = cols it produces the within-column differences; applied to the
/// row-major vector with run_length = cols and runs = rows it produces the
/// within-row differences.
struct DiffOperator {
    int run_length = 0;  ///< samples per 1-D run (>= 1)
    int runs = 0;        ///< number of independent runs (>= 1)

    std::size_t size() const {
        return static_cast<std::size_t>(run_length) * runs;
    }
};

/// out_k = x_k - x_{k+1} within each run; the last entry of each run is 0.
void apply_diff(const DiffOperator& op, std::span<const double> x, std::span<double> out);
std::vector<double> apply_diff(const DiffOperator& op, std::span<const double> x);

/// Exact adjoint of apply_diff: <Dx, y> == <x, D^T y> for all x, y.
void apply_diff_adjoint(const DiffOperator& op, std::span<const double> y, std::span<double> out);
std::vector<double> apply_diff_adjoint(const DiffOperator& op, std::span<const double> y);

/// Permute a column-major image vector into row-major order (the matrix P).
void col_to_row_major(int rows, int cols, std::span<const double> x, std::span<double> out);
std::vector<double> col_to_row_major(int rows, int cols, std::span<const double> x);

/// Inverse permutation of col_to_row_major (the matrix P^T).
void row_to_col_major(int rows, int cols, std::span<const double> y, std::span<double> out);
std::vector<double> row_to_col_major(int rows, int cols, std::span<const double> y);

/// Tridiagonal system in banded storage.
///
/// All systems assembled by this module are strictly diagonally dominant
/// with positive diagonal (D^T D plus a positive shift), so the Thomas
/// algorithm needs no pivoting.
struct TridiagSystem {
    std::vector<double> lower;  ///< sub-diagonal, length N - 1
    std::vector<double> diag;   ///< main diagonal, length N
    std::vector<double> upper;  ///< super-diagonal, length N - 1

    std::size_t size() const { return diag.size(); }
};

/// Assemble D^T D + shift * I as a tridiagonal system.
///
/// The block structure of D makes the coupling entries at run boundaries
/// exactly zero. shift must be positive.
TridiagSystem shifted_gram(const DiffOperator& op, double shift);

/// Solve a tridiagonal system by the Thomas algorithm: one forward
/// elimination and one back substitution, no pivoting, O(N).
///
/// The solution satisfies ||Ax - rhs||_inf <= 1e-10 * max(1, ||rhs||_inf)
/// for the diagonally dominant systems produced by shifted_gram. A pivot
/// below 1e-14 of its row scale throws std::runtime_error.
void thomas_solve(const TridiagSystem& sys, std::span<const double> rhs,
                  std::span<double> x, std::vector<double>& scratch);
std::vector<double> thomas_solve(const TridiagSystem& sys, std::span<const double> rhs);

}  // namespace tvd
