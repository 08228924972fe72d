#include <cctype>
#include <cstddef>

#include "ninecusps/matrix.hpp"
#include "ninecusps/rational.hpp"

namespace ninecusps {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.erase(0, 1);
    }
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    Rational q = make_rational(Int(num), Int(den));
    return negative ? Rational(-q) : q;
}

Int det_exact(const Matrix<Int>& m) {
    return detail::det_bareiss(m, [](const Int& a, const Int& b) {
        Int q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    });
}

Rational det_exact(const Matrix<Rational>& m) { return detail::det_gauss(m); }

Eisenstein det_exact(const Matrix<Eisenstein>& m) { return detail::det_gauss(m); }

F3 det_mod3(const Matrix<Int>& m) {
    if (!m.is_square()) throw ShapeError("det: matrix not square");
    Matrix<F3> r = m.map<F3>([](const Int& v) { return F3(mpz_fdiv_ui(v.get_mpz_t(), 3)); });
    return detail::det_gauss(r);
}

std::vector<Rational> solve_exact(const Matrix<Rational>& m, const std::vector<Rational>& rhs) {
    if (!m.is_square()) throw ShapeError("solve: matrix not square");
    const std::size_t n = m.rows();
    if (rhs.size() != n) throw ShapeError("solve: right-hand side length mismatch");

    Matrix<Rational> a = m;
    std::vector<Rational> b = rhs;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k) == 0) ++p;
        if (p == n) throw SingularMatrixError("solve: singular matrix");
        if (p != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            std::swap(b[k], b[p]);
        }
        const Rational pivot = a.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a.at(i, k) == 0) continue;
            const Rational f = a.at(i, k) / pivot;
            for (std::size_t j = k; j < n; ++j) a.at(i, j) = a.at(i, j) - f * a.at(k, j);
            b[i] = b[i] - f * b[k];
        }
    }
    std::vector<Rational> x(n, Rational(0));
    for (std::size_t i = n; i-- > 0;) {
        Rational acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a.at(i, j) * x[j];
        x[i] = acc / a.at(i, i);
    }
    return x;
}

std::size_t rank(const Matrix<Eisenstein>& m) {
    Matrix<Eisenstein> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a.at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = col; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
        const Eisenstein pivot = a.at(r, col);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a.at(i, col).is_zero()) continue;
            const Eisenstein f = a.at(i, col) / pivot;
            for (std::size_t j = col; j < cols; ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        ++r;
    }
    return r;
}

std::vector<std::vector<Eisenstein>> nullspace(const Matrix<Eisenstein>& m) {
    Matrix<Eisenstein> a = m;
    const std::size_t rows = a.rows(), cols = a.cols();

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t p = r;
        while (p < rows && a.at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(r, j), a.at(p, j));
        const Eisenstein pivot = a.at(r, col);
        for (std::size_t j = 0; j < cols; ++j) a.at(r, j) = a.at(r, j) / pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a.at(i, col).is_zero()) continue;
            const Eisenstein f = a.at(i, col);
            for (std::size_t j = 0; j < cols; ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
        }
        pivot_col.push_back(col);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Eisenstein>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Eisenstein> v(cols, Eisenstein(0));
        v[free] = Eisenstein(1);
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace ninecusps
