#include "stratal/matrix.hpp"

#include <utility>

namespace stratal {

Matrix::Matrix(int rows, int cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != static_cast<size_t>(rows) * cols)
        throw shape_error("matrix entry count does not match shape");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(rows_);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw shape_error("matrix product shape mismatch");
    Matrix p(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Rational& x = at(r, k);
            if (x.is_zero()) continue;
            for (int c = 0; c < rhs.cols_; ++c) p.at(r, c) += x * rhs.at(k, c);
        }
    return p;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw shape_error("matrix sum shape mismatch");
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] + rhs.e_[i];
    return s;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw shape_error("matrix diff shape mismatch");
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] - rhs.e_[i];
    return s;
}

Matrix Matrix::operator-() const {
    Matrix s(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) s.e_[i] = -e_[i];
    return s;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix m(rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = e_[i] * s;
    return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw shape_error("hstack row mismatch");
    Matrix m(a.rows_, a.cols_ + b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
        for (int c = 0; c < b.cols_; ++c) m.at(r, a.cols_ + c) = b.at(r, c);
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw shape_error("vstack column mismatch");
    Matrix m(a.rows_ + b.rows_, a.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.rows_; ++r)
        for (int c = 0; c < b.cols_; ++c) m.at(a.rows_ + r, c) = b.at(r, c);
    return m;
}

Matrix Matrix::diag_blocks(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (int r = 0; r < a.rows_; ++r)
        for (int c = 0; c < a.cols_; ++c) m.at(r, c) = a.at(r, c);
    for (int r = 0; r < b.rows_; ++r)
        for (int c = 0; c < b.cols_; ++c) m.at(a.rows_ + r, a.cols_ + c) = b.at(r, c);
    return m;
}

Matrix Matrix::sub(int r0, int c0, int nrows, int ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) throw shape_error("submatrix out of range");
    Matrix m(nrows, ncols);
    for (int r = 0; r < nrows; ++r)
        for (int c = 0; c < ncols; ++c) m.at(r, c) = at(r0 + r, c0 + c);
    return m;
}

Echelon echelon_form(const Matrix& a) {
    Matrix m = a;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < m.rows(); ++r)
            if (!m.at(r, col).is_zero()) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (int c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return Echelon{std::move(m), std::move(pivots)};
}

int rank(const Matrix& a) { return static_cast<int>(echelon_form(a).pivots.size()); }

std::optional<Matrix> solve_linear(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw shape_error("solve_linear: rhs row mismatch");
    Echelon e = echelon_form(Matrix::hstack(a, b));
    // A pivot inside the rhs block means some column of b is inconsistent.
    for (int p : e.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(a.cols(), b.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (int c = 0; c < b.cols(); ++c)
            x.at(e.pivots[i], c) = e.reduced.at(static_cast<int>(i), a.cols() + c);
    return x;
}

Matrix kernel_basis(const Matrix& a) {
    Echelon e = echelon_form(a);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < a.cols(); ++c) {
            if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Matrix k(a.cols(), static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        k.at(free_cols[j], static_cast<int>(j)) = Rational(1);
        for (size_t i = 0; i < e.pivots.size(); ++i)
            k.at(e.pivots[i], static_cast<int>(j)) = -e.reduced.at(static_cast<int>(i), free_cols[j]);
    }
    return k;
}

Matrix image_basis(const Matrix& a) {
    Echelon e = echelon_form(a);
    Matrix im(a.rows(), static_cast<int>(e.pivots.size()));
    for (size_t j = 0; j < e.pivots.size(); ++j)
        for (int r = 0; r < a.rows(); ++r) im.at(r, static_cast<int>(j)) = a.at(r, e.pivots[j]);
    return im;
}

Matrix cokernel_projection(const Matrix& a) { return kernel_basis(a.transpose()).transpose(); }

KernelImageCokernel kernel_image_cokernel(const Matrix& a) {
    return KernelImageCokernel{kernel_basis(a), image_basis(a), cokernel_projection(a)};
}

std::optional<Matrix> inverse(const Matrix& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    Echelon e = echelon_form(Matrix::hstack(a, Matrix::identity(a.rows())));
    if (static_cast<int>(e.pivots.size()) != a.rows()) return std::nullopt;
    for (size_t i = 0; i < e.pivots.size(); ++i)
        if (e.pivots[i] != static_cast<int>(i)) return std::nullopt;
    return e.reduced.sub(0, a.cols(), a.rows(), a.cols());
}

bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

void SparseMatrix::add(int r, int c, const Rational& v) {
    if (v.is_zero()) return;
    auto& e = rows_[r].entries;
    auto it = std::lower_bound(e.begin(), e.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != e.end() && it->first == c) {
        it->second += v;
        if (it->second.is_zero()) e.erase(it);
    } else {
        e.insert(it, {c, v});
    }
}

const Rational* SparseMatrix::find(int r, int c) const {
    const auto& e = rows_[r].entries;
    auto it = std::lower_bound(e.begin(), e.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != e.end() && it->first == c) return &it->second;
    return nullptr;
}

namespace {

using SparseRow = std::vector<std::pair<int, Rational>>;

const Rational* row_find(const SparseRow& r, int c) {
    auto it = std::lower_bound(r.begin(), r.end(), c,
                               [](const auto& p, int col) { return p.first < col; });
    if (it != r.end() && it->first == c) return &it->second;
    return nullptr;
}

void row_scale(SparseRow& r, const Rational& f) {
    for (auto& [c, v] : r) v *= f;
}

// r -= f * p
void row_axpy(SparseRow& r, const Rational& f, const SparseRow& p) {
    SparseRow out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            out.emplace_back(p[j].first, -(f * p[j].second));
            ++j;
        } else {
            Rational v = r[i].second - f * p[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

struct SparseEchelon {
    std::vector<SparseRow> rows;       // fully reduced
    std::vector<int> pivots;           // pivot column per pivot row
};

SparseEchelon sparse_echelon(const SparseMatrix& a, const Matrix* rhs) {
    int n = a.rows();
    int width = a.cols() + (rhs ? rhs->cols() : 0);
    std::vector<SparseRow> rows(n);
    for (int r = 0; r < n; ++r) {
        rows[r] = a.row(r).entries;
        if (rhs)
            for (int c = 0; c < rhs->cols(); ++c)
                if (!rhs->at(r, c).is_zero()) rows[r].emplace_back(a.cols() + c, rhs->at(r, c));
    }
    std::vector<int> pivots;
    int prow = 0;
    for (int col = 0; col < width && prow < n; ++col) {
        int piv = -1;
        for (int r = prow; r < n; ++r) {
            const Rational* v = row_find(rows[r], col);
            if (v) { piv = r; break; }
        }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[prow]);
        const Rational* lead = row_find(rows[prow], col);
        row_scale(rows[prow], Rational(1) / *lead);
        for (int r = 0; r < n; ++r) {
            if (r == prow) continue;
            const Rational* v = row_find(rows[r], col);
            if (v) row_axpy(rows[r], *v, rows[prow]);
        }
        pivots.push_back(col);
        ++prow;
    }
    return SparseEchelon{std::move(rows), std::move(pivots)};
}

}  // namespace

Matrix sparse_kernel_basis(const SparseMatrix& a) {
    SparseEchelon e = sparse_echelon(a, nullptr);
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < a.cols(); ++c) {
            if (pi < e.pivots.size() && e.pivots[pi] == c) { ++pi; continue; }
            free_cols.push_back(c);
        }
    }
    Matrix k(a.cols(), static_cast<int>(free_cols.size()));
    for (size_t j = 0; j < free_cols.size(); ++j) {
        k.at(free_cols[j], static_cast<int>(j)) = Rational(1);
        for (size_t i = 0; i < e.pivots.size(); ++i) {
            const Rational* v = row_find(e.rows[i], free_cols[j]);
            if (v) k.at(e.pivots[i], static_cast<int>(j)) = -*v;
        }
    }
    return k;
}

std::optional<Matrix> sparse_solve(const SparseMatrix& a, const Matrix& rhs) {
    if (a.rows() != rhs.rows()) throw shape_error("sparse_solve: rhs row mismatch");
    SparseEchelon e = sparse_echelon(a, &rhs);
    for (int p : e.pivots)
        if (p >= a.cols()) return std::nullopt;
    Matrix x(a.cols(), rhs.cols());
    for (size_t i = 0; i < e.pivots.size(); ++i)
        for (int c = 0; c < rhs.cols(); ++c) {
            const Rational* v = row_find(e.rows[i], a.cols() + c);
            if (v) x.at(e.pivots[i], c) = *v;
        }
    return x;
}

int sparse_rank(const SparseMatrix& a) {
    return static_cast<int>(sparse_echelon(a, nullptr).pivots.size());
}

}  // namespace stratal
