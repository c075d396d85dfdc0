#ifndef STRATAL_MATRIX_HPP
#define STRATAL_MATRIX_HPP

#include <optional>
#include <vector>

#include "stratal/rational.hpp"

namespace stratal {

/// Dense matrix of exact rationals, row-major. Maps are matrices acting on
/// column vectors: a map V -> W with dim V = cols, dim W = rows.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}
    Matrix(int rows, int cols, std::vector<Rational> entries);

    static Matrix identity(int n);
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix operator+(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix operator-() const;
    Matrix scaled(const Rational& s) const;
    friend bool operator==(const Matrix& a, const Matrix& b);

    /// Stack side by side / on top of each other.
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    /// Block diagonal.
    static Matrix diag_blocks(const Matrix& a, const Matrix& b);

    Matrix sub(int r0, int c0, int nrows, int ncols) const;
    Matrix column(int c) const { return sub(0, c, rows_, 1); }

private:
    int rows_, cols_;
    std::vector<Rational> e_;
};

/// Row echelon data produced by the deterministic elimination: first nonzero
/// entry scanning top to bottom is the pivot, columns processed left to
/// right. Everything downstream (kernels, solutions, induced maps) inherits
/// reproducibility from this rule.
struct Echelon {
    Matrix reduced;           // fully reduced row-echelon form
    std::vector<int> pivots;  // pivot column per pivot row
};

Echelon echelon_form(const Matrix& a);
int rank(const Matrix& a);

/// Solve A x = b for one or many right-hand sides (b has A.rows() rows).
/// Returns the solution with all free variables set to zero, or nullopt if
/// any column of b is inconsistent.
std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b);

/// Columns span ker A; one column per free column of the echelon form.
Matrix kernel_basis(const Matrix& a);
/// The pivot columns of A itself, in order.
Matrix image_basis(const Matrix& a);
/// Full-row-rank Q with Q A = 0 and rank Q = rows - rank A.
Matrix cokernel_projection(const Matrix& a);

struct KernelImageCokernel {
    Matrix kernel;
    Matrix image;
    Matrix cokernel;
};
KernelImageCokernel kernel_image_cokernel(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);
bool is_invertible(const Matrix& a);

/// Row-sparse matrix for the big homotopy/fill-in systems. Same pivot rule
/// as the dense elimination, so results are identical where both apply.
class SparseMatrix {
public:
    SparseMatrix(int rows, int cols) : cols_(cols), rows_(rows) {}

    int rows() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    void add(int r, int c, const Rational& v);
    const Rational* find(int r, int c) const;

    /// One column appended per call; used for right-hand sides.
    struct Row {
        std::vector<std::pair<int, Rational>> entries;  // sorted by column
    };
    Row& row(int r) { return rows_[r]; }
    const Row& row(int r) const { return rows_[r]; }

private:
    int cols_;
    std::vector<Row> rows_;
};

Matrix sparse_kernel_basis(const SparseMatrix& a);
std::optional<Matrix> sparse_solve(const SparseMatrix& a, const Matrix& rhs);
int sparse_rank(const SparseMatrix& a);

}  // namespace stratal

#endif
