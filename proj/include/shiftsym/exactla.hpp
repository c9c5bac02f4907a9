#pragma once

#include "shiftsym/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace shiftsym {

template <typename Scalar>
struct RowEchelon {
    Matrix<Scalar> reduced;       // reduced row echelon form of the input
    std::vector<Index> pivots;    // pivot columns, increasing
    Matrix<Scalar> transform;     // T with T * A == reduced (only when requested)

    Index rank() const { return static_cast<Index>(pivots.size()); }
};

// Gauss-Jordan elimination with pivots taken in column order.  Row operations
// only touch the nonzero entries of the pivot row, which keeps the sparse
// structure matrices cheap.
template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(const Eigen::MatrixBase<Derived>& a,
                                                 bool with_transform = false) {
    using Scalar = typename Derived::Scalar;
    const Index rows = a.rows(), cols = a.cols();
    const Index width = with_transform ? cols + rows : cols;
    Matrix<Scalar> m(rows, width);
    m.leftCols(cols) = a;
    if (with_transform) {
        m.rightCols(rows).setZero();
        for (Index i = 0; i < rows; ++i) m(i, cols + i) = Scalar(1);
    }
    RowEchelon<Scalar> out;
    std::vector<Index> support;
    Index row = 0;
    for (Index c = 0; c < cols && row < rows; ++c) {
        Index p = row;
        while (p < rows && is_zero(m(p, c))) ++p;
        if (p == rows) continue;
        if (p != row) m.row(p).swap(m.row(row));
        const Scalar inv = Scalar(1) / m(row, c);
        support.clear();
        for (Index j = c; j < width; ++j) {
            if (is_zero(m(row, j))) continue;
            m(row, j) *= inv;
            support.push_back(j);
        }
        for (Index i = 0; i < rows; ++i) {
            if (i == row || is_zero(m(i, c))) continue;
            const Scalar factor = m(i, c);
            for (Index j : support) m(i, j) -= factor * m(row, j);
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.reduced = m.leftCols(cols);
    if (with_transform) out.transform = m.rightCols(rows);
    return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return row_echelon(a).rank();
}

// Basis of the null space read off the reduced form: one column per free
// variable, carrying a 1 in that variable's slot and 0 in every other free slot.
template <typename Scalar>
Matrix<Scalar> kernel_from_echelon(const RowEchelon<Scalar>& e, Index cols) {
    std::vector<char> is_pivot(static_cast<std::size_t>(cols), 0);
    for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
    Matrix<Scalar> k = Matrix<Scalar>::Zero(cols, cols - e.rank());
    Index f = 0;
    for (Index j = 0; j < cols; ++j) {
        if (is_pivot[static_cast<std::size_t>(j)]) continue;
        k(j, f) = Scalar(1);
        for (Index r = 0; r < e.rank(); ++r)
            if (!is_zero(e.reduced(r, j))) k(e.pivots[static_cast<std::size_t>(r)], f) = -e.reduced(r, j);
        ++f;
    }
    return k;
}

template <typename Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() == 0) return Matrix<Scalar>::Identity(a.cols(), a.cols());
    return kernel_from_echelon(row_echelon(a), a.cols());
}

// Columns of `a` at the pivot positions.
template <typename Derived>
Matrix<typename Derived::Scalar> image(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() == 0 || a.cols() == 0) return Matrix<Scalar>(a.rows(), 0);
    auto e = row_echelon(a);
    Matrix<Scalar> out(a.rows(), e.rank());
    for (Index i = 0; i < e.rank(); ++i) out.col(i) = a.col(e.pivots[static_cast<std::size_t>(i)]);
    return out;
}

template <typename Scalar>
struct SolveResult {
    bool feasible = false;
    Vector<Scalar> solution;     // particular solution, free variables set to 0
    Matrix<Scalar> kernel;       // basis of ker(M)
    Vector<Scalar> certificate;  // y with y^T M = 0 and y^T b = 1 when infeasible
};

template <typename DerivedA, typename DerivedB>
SolveResult<typename DerivedA::Scalar> solve(const Eigen::MatrixBase<DerivedA>& m,
                                             const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    if (b.rows() != m.rows() || b.cols() != 1)
        throw InvalidInput("solve: right-hand side has wrong shape");
    const Index rows = m.rows(), cols = m.cols();
    Matrix<Scalar> aug(rows, cols + 1);
    aug.leftCols(cols) = m;
    aug.col(cols) = b;
    auto e = row_echelon(aug, true);
    SolveResult<Scalar> out;
    if (e.rank() > 0 && e.pivots.back() == cols) {
        out.certificate = e.transform.row(e.rank() - 1).transpose();
        return out;
    }
    out.feasible = true;
    out.solution = Vector<Scalar>::Zero(cols);
    for (Index r = 0; r < e.rank(); ++r) out.solution(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, cols);
    RowEchelon<Scalar> core{e.reduced.leftCols(cols), e.pivots, {}};
    out.kernel = kernel_from_echelon(core, cols);
    return out;
}

// Solve M X = B for several right-hand sides at once; nullopt if any column is infeasible.
template <typename DerivedA, typename DerivedB>
std::optional<Matrix<typename DerivedA::Scalar>> solve_columns(const Eigen::MatrixBase<DerivedA>& m,
                                                               const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    const Index cols = m.cols();
    Matrix<Scalar> aug(m.rows(), cols + b.cols());
    aug.leftCols(cols) = m;
    aug.rightCols(b.cols()) = b;
    auto e = row_echelon(aug);
    Matrix<Scalar> x = Matrix<Scalar>::Zero(cols, b.cols());
    for (Index r = 0; r < e.rank(); ++r) {
        Index p = e.pivots[static_cast<std::size_t>(r)];
        if (p >= cols) return std::nullopt;
        x.row(p) = e.reduced.row(r).rightCols(b.cols());
    }
    return x;
}

template <typename Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) throw InvalidInput("inverse: matrix is not square");
    auto x = solve_columns(a, Matrix<Scalar>::Identity(a.rows(), a.rows()));
    if (!x || rank(a) != a.rows()) throw PreconditionError("inverse: matrix is singular");
    return *x;
}

// Sparse-aware product; structure matrices are mostly zeros and rational
// multiplications dominate otherwise.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> product(const Eigen::MatrixBase<DerivedA>& a_in,
                                          const Eigen::MatrixBase<DerivedB>& b_in) {
    using Scalar = typename DerivedA::Scalar;
    if (a_in.cols() != b_in.rows()) throw InvalidInput("product: inner dimensions differ");
    Matrix<Scalar> out = Matrix<Scalar>::Zero(a_in.rows(), b_in.cols());
    const auto& a = a_in.eval();
    const auto& b = b_in.eval();
    std::vector<std::pair<Index, const Scalar*>> row_b;
    for (Index k = 0; k < a.cols(); ++k) {
        row_b.clear();
        for (Index j = 0; j < b.cols(); ++j)
            if (!is_zero(b(k, j))) row_b.emplace_back(j, &b(k, j));
        if (row_b.empty()) continue;
        for (Index i = 0; i < a.rows(); ++i) {
            const Scalar& aik = a(i, k);
            if (is_zero(aik)) continue;
            for (auto& [j, v] : row_b) out(i, j) += aik * *v;
        }
    }
    return out;
}

template <typename Derived>
bool is_identity(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols()) return false;
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (a(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
    return true;
}

template <typename Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& a) {
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!is_zero(a(i, j))) return false;
    return true;
}

// Coordinates with respect to a basis with independent columns: v = B * coords(v).
template <typename Scalar>
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(Matrix<Scalar> basis) : basis_(std::move(basis)) {
        if (basis_.cols() == 0) return;
        auto e = row_echelon(Matrix<Scalar>(basis_.transpose()));
        if (e.rank() != basis_.cols()) throw InvalidInput("Subspace: columns are dependent");
        rows_ = e.pivots;
        Matrix<Scalar> square(basis_.cols(), basis_.cols());
        for (Index i = 0; i < basis_.cols(); ++i) square.row(i) = basis_.row(rows_[static_cast<std::size_t>(i)]);
        if (!is_identity(square)) solver_ = inverse(square);
    }

    static Subspace full(Index n) { return Subspace(Matrix<Scalar>::Identity(n, n)); }

    // Basis whose rows at `rows` form an identity block (e.g. a kernel basis
    // read off a reduced echelon form); skips the pivot search.
    static Subspace with_unit_rows(Matrix<Scalar> basis, std::vector<Index> rows) {
        Subspace s;
        s.basis_ = std::move(basis);
        s.rows_ = std::move(rows);
        return s;
    }

    const Matrix<Scalar>& basis() const { return basis_; }
    Index dim() const { return basis_.cols(); }
    Index ambient_dim() const { return basis_.rows(); }

    template <typename Derived>
    Matrix<Scalar> coords(const Eigen::MatrixBase<Derived>& v) const {
        Matrix<Scalar> picked(dim(), v.cols());
        for (Index i = 0; i < dim(); ++i) picked.row(i) = v.row(rows_[static_cast<std::size_t>(i)]);
        if (solver_.size() == 0) return picked;
        return product(solver_, picked);
    }

    // Coordinates, or nullopt when some column of v leaves the subspace.
    template <typename Derived>
    std::optional<Matrix<Scalar>> checked_coords(const Eigen::MatrixBase<Derived>& v) const {
        Matrix<Scalar> c = coords(v);
        if (product(basis_, c) != v) return std::nullopt;
        return c;
    }

  private:
    Matrix<Scalar> basis_;
    std::vector<Index> rows_;
    Matrix<Scalar> solver_;
};

// Null space as a Subspace with cheap coordinates (the free variables).
template <typename Derived>
Subspace<typename Derived::Scalar> kernel_subspace(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Index cols = a.cols();
    if (a.rows() == 0) {
        std::vector<Index> rows(static_cast<std::size_t>(cols));
        for (Index j = 0; j < cols; ++j) rows[static_cast<std::size_t>(j)] = j;
        return Subspace<Scalar>::with_unit_rows(Matrix<Scalar>::Identity(cols, cols), std::move(rows));
    }
    auto e = row_echelon(a);
    std::vector<Index> free;
    std::size_t next = 0;
    for (Index j = 0; j < cols; ++j) {
        if (next < e.pivots.size() && e.pivots[next] == j) {
            ++next;
            continue;
        }
        free.push_back(j);
    }
    return Subspace<Scalar>::with_unit_rows(kernel_from_echelon(e, cols), std::move(free));
}

// Columns of `extra` that extend span(base) to span(base | extra), in column order.
template <typename Scalar>
Matrix<Scalar> complete_basis(const Matrix<Scalar>& base, const Matrix<Scalar>& extra) {
    Matrix<Scalar> both(base.rows(), base.cols() + extra.cols());
    both << base, extra;
    if (both.cols() == 0 || both.rows() == 0) return Matrix<Scalar>(base.rows(), 0);
    auto e = row_echelon(both);
    std::vector<Index> keep;
    for (Index p : e.pivots)
        if (p >= base.cols()) keep.push_back(p - base.cols());
    Matrix<Scalar> out(base.rows(), static_cast<Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Index>(i)) = extra.col(keep[i]);
    return out;
}

template <typename Scalar>
Matrix<Scalar> vstack(const std::vector<Matrix<Scalar>>& blocks, Index cols) {
    Index rows = 0;
    for (auto& b : blocks) rows += b.rows();
    Matrix<Scalar> out(rows, cols);
    Index r = 0;
    for (auto& b : blocks) {
        if (b.cols() != cols) throw InvalidInput("vstack: column count mismatch");
        out.middleRows(r, b.rows()) = b;
        r += b.rows();
    }
    return out;
}

template <typename Scalar>
Matrix<Scalar> hstack(const std::vector<Matrix<Scalar>>& blocks, Index rows) {
    Index cols = 0;
    for (auto& b : blocks) cols += b.cols();
    Matrix<Scalar> out(rows, cols);
    Index c = 0;
    for (auto& b : blocks) {
        if (b.rows() != rows) throw InvalidInput("hstack: row count mismatch");
        out.middleCols(c, b.cols()) = b;
        c += b.cols();
    }
    return out;
}

template <typename Scalar>
Matrix<Scalar> block_diagonal(const std::vector<Matrix<Scalar>>& blocks) {
    Index rows = 0, cols = 0;
    for (auto& b : blocks) rows += b.rows(), cols += b.cols();
    Matrix<Scalar> out = Matrix<Scalar>::Zero(rows, cols);
    Index r = 0, c = 0;
    for (auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

}  // namespace shiftsym
