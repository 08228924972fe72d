#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ninecusps/eisenstein.hpp"
#include "ninecusps/f3.hpp"
#include "ninecusps/rational.hpp"

namespace ninecusps {

struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Reported distinctly from shape mismatches: callers of solve_exact need to
// tell the two apart.
struct SingularMatrixError : std::domain_error {
    using std::domain_error::domain_error;
};

// Dense row-major matrix over an exact scalar type.
template <class S>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, S fill = S())
        : rows_(rows), cols_(cols), e_(rows * cols, std::move(fill)) {}

    Matrix(std::initializer_list<std::initializer_list<S>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw ShapeError("matrix: ragged initializer");
            for (const auto& v : r) e_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, S(0));
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    S& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    bool is_symmetric() const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if (!(at(i, j) == at(j, i))) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw ShapeError("matrix: product shape mismatch");
        Matrix p(x.rows_, y.cols_, S(0));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const S& xik = x.at(i, k);
                for (std::size_t j = 0; j < y.cols_; ++j) p.at(i, j) += xik * y.at(k, j);
            }
        return p;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.e_ == y.e_;
    }

    template <class T, class F>
    Matrix<T> map(F&& f) const {
        Matrix<T> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = f(at(i, j));
        return m;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<S> e_;
};

namespace detail {

template <class S>
bool scalar_is_zero(const S& v) {
    return v == S(0);
}
inline bool scalar_is_zero(const Eisenstein& v) { return v.is_zero(); }
inline bool scalar_is_zero(const F3& v) { return v.is_zero(); }

// Fraction-free elimination; divisions are exact in any integral domain.
// `exact_div` must divide without remainder (guaranteed by the algorithm).
template <class S, class Div>
S det_bareiss(Matrix<S> m, Div&& exact_div) {
    if (!m.is_square()) throw ShapeError("det: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return S(1);
    S denom(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (scalar_is_zero(m.at(k, k))) {
            std::size_t p = k + 1;
            while (p < n && scalar_is_zero(m.at(p, k))) ++p;
            if (p == n) return S(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) = exact_div(m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j), denom);
        for (std::size_t i = k + 1; i < n; ++i) m.at(i, k) = S(0);
        denom = m.at(k, k);
    }
    S d = m.at(n - 1, n - 1);
    return negate ? S(S(0) - d) : d;
}

// Gaussian elimination over a field.
template <class S>
S det_gauss(Matrix<S> m) {
    if (!m.is_square()) throw ShapeError("det: matrix not square");
    const std::size_t n = m.rows();
    S det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && scalar_is_zero(m.at(p, k))) ++p;
        if (p == n) return S(0);
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            det = S(0) - det;
        }
        const S pivot = m.at(k, k);
        det = det * pivot;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (scalar_is_zero(m.at(i, k))) continue;
            const S factor = m.at(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) m.at(i, j) = m.at(i, j) - factor * m.at(k, j);
        }
    }
    return det;
}

}  // namespace detail

// Exact determinants; no rounding anywhere.
Int det_exact(const Matrix<Int>& m);
Rational det_exact(const Matrix<Rational>& m);
Eisenstein det_exact(const Matrix<Eisenstein>& m);

// Determinant reduced mod 3, computed entirely over F3.
F3 det_mod3(const Matrix<Int>& m);

// Solves m*x = rhs exactly. Throws ShapeError on dimension mismatch and
// SingularMatrixError when m has no inverse.
std::vector<Rational> solve_exact(const Matrix<Rational>& m, const std::vector<Rational>& rhs);

std::size_t rank(const Matrix<Eisenstein>& m);

// Basis of the right kernel, via reduced row echelon form.
std::vector<std::vector<Eisenstein>> nullspace(const Matrix<Eisenstein>& m);

}  // namespace ninecusps
