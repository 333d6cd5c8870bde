#ifndef SKEWDGA_LINALG_HPP
#define SKEWDGA_LINALG_HPP

// Dense exact linear algebra over a ScalarField: row reduction, kernels,
// ranks and a reusable solver for M x = b.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace skewdga {

template <class Scalar>
using Vector = std::vector<Scalar>;

template <class Scalar>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const Scalar& zero)
        : rows_(rows), cols_(cols), data_(rows * cols, zero)
    {
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector<Scalar> row(std::size_t i) const
    {
        return Vector<Scalar>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }
    Vector<Scalar> column(std::size_t j) const
    {
        Vector<Scalar> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c.push_back((*this)(i, j));
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    bool is_zero() const
    {
        for (const auto& x : data_)
            if (!x.is_zero())
                return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

template <class Scalar>
Matrix<Scalar> multiply(const Matrix<Scalar>& a, const Matrix<Scalar>& b, const Scalar& zero)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix shape mismatch");
    Matrix<Scalar> c(a.rows(), b.cols(), zero);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (!b(k, j).is_zero())
                    c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

/// Reduces m to reduced row echelon form in place; returns the pivot columns.
/// Pivots are taken leftmost-first, so they are lexicographically earliest.
template <class Scalar>
std::vector<std::size_t> rref(Matrix<Scalar>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero())
            ++p;
        if (p == m.rows())
            continue;
        m.swap_rows(p, r);
        Scalar inv = m(r, c).inverse();
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero())
                continue;
            Scalar f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                if (!m(r, j).is_zero())
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class Scalar>
std::size_t rank(Matrix<Scalar> m)
{
    return rref(m).size();
}

/// Basis of {x : m x = 0}, one vector per non-pivot column, in column order.
template <ScalarField Field>
std::vector<Vector<typename Field::Scalar>> kernel_basis(const Field& k, Matrix<typename Field::Scalar> m)
{
    using Scalar = typename Field::Scalar;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<Vector<Scalar>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector<Scalar> v(m.cols(), k.zero());
        v[free] = k.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Row-reduces a list of vectors (all of one length) and returns the nonzero
/// rows of the reduced echelon form together with their pivot columns.
template <ScalarField Field>
struct EchelonBasis {
    std::vector<Vector<typename Field::Scalar>> rows;
    std::vector<std::size_t> pivots;
};

template <ScalarField Field>
EchelonBasis<Field> echelon_basis(const Field& k, const std::vector<Vector<typename Field::Scalar>>& vectors,
                                  std::size_t length)
{
    Matrix<typename Field::Scalar> m(vectors.size(), length, k.zero());
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < length; ++j)
            m(i, j) = vectors[i][j];
    EchelonBasis<Field> out;
    out.pivots = rref(m);
    for (std::size_t i = 0; i < out.pivots.size(); ++i)
        out.rows.push_back(m.row(i));
    return out;
}

/// Reduces v against an echelon basis (zeroing its pivot coordinates).
template <ScalarField Field>
void reduce_against(Vector<typename Field::Scalar>& v, const EchelonBasis<Field>& basis)
{
    for (std::size_t r = 0; r < basis.rows.size(); ++r) {
        auto c = basis.pivots[r];
        if (v[c].is_zero())
            continue;
        auto f = v[c];
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!basis.rows[r][j].is_zero())
                v[j] -= f * basis.rows[r][j];
    }
}

/// Solves m x = b for many right-hand sides against one factorization.
template <ScalarField Field>
class LinearSolver {
public:
    using Scalar = typename Field::Scalar;

    LinearSolver(const Field& k, const Matrix<Scalar>& m) : k_(k), cols_(m.cols()), rows_(m.rows())
    {
        Matrix<Scalar> aug(m.rows(), m.cols() + m.rows(), k.zero());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j)
                aug(i, j) = m(i, j);
            aug(i, m.cols() + i) = k.one();
        }
        // Only eliminate over the first cols_ columns.
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && aug(p, c).is_zero())
                ++p;
            if (p == rows_)
                continue;
            aug.swap_rows(p, r);
            Scalar inv = aug(r, c).inverse();
            for (std::size_t j = c; j < aug.cols(); ++j)
                aug(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || aug(i, c).is_zero())
                    continue;
                Scalar f = aug(i, c);
                for (std::size_t j = c; j < aug.cols(); ++j)
                    if (!aug(r, j).is_zero())
                        aug(i, j) -= f * aug(r, j);
            }
            pivots_.push_back(c);
            ++r;
        }
        transform_ = Matrix<Scalar>(rows_, rows_, k.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j)
                transform_(i, j) = aug(i, cols_ + j);
    }

    std::size_t rank() const { return pivots_.size(); }

    /// A particular solution, or nullopt when b is not in the column space.
    std::optional<Vector<Scalar>> solve(const Vector<Scalar>& b) const
    {
        if (b.size() != rows_)
            throw std::invalid_argument("right-hand side has wrong length");
        Vector<Scalar> tb(rows_, k_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j)
                if (!b[j].is_zero() && !transform_(i, j).is_zero())
                    tb[i] += transform_(i, j) * b[j];
        for (std::size_t i = pivots_.size(); i < rows_; ++i)
            if (!tb[i].is_zero())
                return std::nullopt;
        Vector<Scalar> x(cols_, k_.zero());
        for (std::size_t i = 0; i < pivots_.size(); ++i)
            x[pivots_[i]] = tb[i];
        return x;
    }

private:
    Field k_;
    std::size_t cols_;
    std::size_t rows_;
    std::vector<std::size_t> pivots_;
    Matrix<Scalar> transform_;
};

} // namespace skewdga

#endif // SKEWDGA_LINALG_HPP
