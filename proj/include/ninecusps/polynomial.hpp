#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ninecusps/eisenstein.hpp"
#include "ninecusps/matrix.hpp"

namespace ninecusps {

// Graded lexicographic order, leading (largest) term first: higher total
// degree wins, ties broken lexicographically with variable 0 most significant.
template <int N>
struct GradedLexGreater {
    bool operator()(const std::array<int, N>& x, const std::array<int, N>& y) const {
        int dx = std::accumulate(x.begin(), x.end(), 0);
        int dy = std::accumulate(y.begin(), y.end(), 0);
        if (dx != dy) return dx > dy;
        return x > y;
    }
};

// Sparse polynomial in N variables with coefficients in Q(w). Zero
// coefficients are never stored; the term map is kept in graded-lex order so
// iteration, serialization and leading-term access are deterministic.
template <int N>
class Polynomial {
  public:
    using Exponents = std::array<int, N>;
    struct Term {
        Exponents exponents;
        Eisenstein coeff;
    };

    Polynomial() = default;
    // Constant polynomial; lets the generic elimination kernels spell S(0), S(1).
    explicit Polynomial(long c) { add_term(Exponents{}, Eisenstein(c)); }

    static Polynomial constant(const Eisenstein& c) {
        Polynomial p;
        p.add_term(Exponents{}, c);
        return p;
    }
    static Polynomial variable(int var, int power = 1) {
        Exponents e{};
        e[check_var(var)] = power;
        return monomial(e, Eisenstein(1));
    }
    static Polynomial monomial(const Exponents& e, const Eisenstein& c) {
        Polynomial p;
        p.add_term(e, c);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    // -1 for the zero polynomial.
    int total_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    int degree_in(int var) const {
        check_var(var);
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) != d) return false;
        return true;
    }

    std::size_t term_count() const { return terms_.size(); }

    Eisenstein coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Eisenstein(0) : it->second;
    }

    Term leading_term() const {
        if (terms_.empty()) throw std::invalid_argument("polynomial: leading term of zero");
        return {terms_.begin()->first, terms_.begin()->second};
    }

    std::vector<Term> terms() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& [e, c] : terms_) out.push_back({e, c});
        return out;
    }

    friend Polynomial operator+(const Polynomial& x, const Polynomial& y) {
        Polynomial r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& x, const Polynomial& y) {
        Polynomial r = x;
        for (const auto& [e, c] : y.terms_) r.add_term(e, -c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& x) {
        Polynomial r;
        for (const auto& [e, c] : x.terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& x, const Polynomial& y) {
        Polynomial r;
        for (const auto& [ex, cx] : x.terms_)
            for (const auto& [ey, cy] : y.terms_) {
                Exponents e;
                for (int i = 0; i < N; ++i) e[i] = ex[i] + ey[i];
                r.add_term(e, cx * cy);
            }
        return r;
    }
    friend Polynomial operator*(const Eisenstein& c, const Polynomial& x) {
        Polynomial r;
        if (c.is_zero()) return r;
        for (const auto& [e, xc] : x.terms_) r.terms_.emplace(e, c * xc);
        return r;
    }
    Polynomial& operator+=(const Polynomial& y) { return *this = *this + y; }
    Polynomial& operator-=(const Polynomial& y) { return *this = *this - y; }
    Polynomial& operator*=(const Polynomial& y) { return *this = *this * y; }

    friend bool operator==(const Polynomial& x, const Polynomial& y) {
        return x.terms_ == y.terms_;
    }

    Polynomial pow(int k) const {
        if (k < 0) throw std::invalid_argument("polynomial: negative power");
        Polynomial r = constant(Eisenstein(1));
        for (int i = 0; i < k; ++i) r *= *this;
        return r;
    }

    Polynomial derivative(int var) const {
        check_var(var);
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, Eisenstein(Rational(e[var])) * c);
        }
        return r;
    }

    Eisenstein evaluate(const std::array<Eisenstein, N>& point) const {
        auto powers = power_table<Eisenstein>(point, Eisenstein(1));
        Eisenstein acc(0);
        for (const auto& [e, c] : terms_) {
            Eisenstein t = c;
            for (int i = 0; i < N; ++i)
                if (e[i] > 0) t *= powers[i][e[i]];
            acc += t;
        }
        return acc;
    }

    // Substitutes a polynomial (possibly in a different variable set) for each
    // variable.
    template <int M>
    Polynomial<M> substitute(const std::array<Polynomial<M>, N>& args) const {
        auto powers = power_table<Polynomial<M>>(args, Polynomial<M>::constant(Eisenstein(1)));
        Polynomial<M> acc;
        for (const auto& [e, c] : terms_) {
            Polynomial<M> t = Polynomial<M>::constant(c);
            for (int i = 0; i < N; ++i)
                if (e[i] > 0) t *= powers[i][e[i]];
            acc += t;
        }
        return acc;
    }

    // Part of given total degree (the zero polynomial when absent).
    Polynomial graded_part(int degree) const {
        Polynomial r;
        for (const auto& [e, c] : terms_)
            if (std::accumulate(e.begin(), e.end(), 0) == degree) r.terms_.emplace(e, c);
        return r;
    }

    // Coefficient of var^k, as a polynomial with var-degree zero.
    Polynomial coefficient_in(int var, int k) const {
        check_var(var);
        Polynomial r;
        for (const auto& [e, c] : terms_) {
            if (e[var] != k) continue;
            Exponents d = e;
            d[var] = 0;
            r.terms_.emplace(d, c);
        }
        return r;
    }

    // Exact division; throws when the divisor does not divide evenly.
    static Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
        auto q = try_divide(f, g);
        if (!q) throw std::invalid_argument("polynomial: inexact division");
        return *q;
    }

    static std::optional<Polynomial> try_divide(const Polynomial& f, const Polynomial& g) {
        if (g.is_zero()) throw std::invalid_argument("polynomial: division by zero");
        Polynomial rem = f;
        Polynomial quot;
        const auto glt = g.leading_term();
        while (!rem.is_zero()) {
            auto rlt = rem.leading_term();
            Exponents d;
            for (int i = 0; i < N; ++i) {
                d[i] = rlt.exponents[i] - glt.exponents[i];
                if (d[i] < 0) return std::nullopt;
            }
            Polynomial t = monomial(d, rlt.coeff / glt.coeff);
            quot += t;
            rem -= t * g;
        }
        return quot;
    }

    bool divides(const Polynomial& f) const { return try_divide(f, *this).has_value(); }

    // Classical resultant with respect to one variable, as the determinant of
    // the Sylvester matrix over the polynomial ring in the other variables
    // (fraction-free elimination, all divisions exact).
    static Polynomial resultant(const Polynomial& f, const Polynomial& g, int var) {
        check_var(var);
        if (f.is_zero() || g.is_zero())
            throw std::invalid_argument("resultant: zero input");
        const int df = f.degree_in(var);
        const int dg = g.degree_in(var);
        if (df == 0 && dg == 0)
            throw std::invalid_argument("resultant: both inputs constant in the variable");
        const int n = df + dg;
        Matrix<Polynomial> syl(n, n, Polynomial{});
        for (int i = 0; i < dg; ++i)
            for (int k = 0; k <= df; ++k) syl.at(i, i + k) = f.coefficient_in(var, df - k);
        for (int i = 0; i < df; ++i)
            for (int k = 0; k <= dg; ++k) syl.at(dg + i, i + k) = g.coefficient_in(var, dg - k);
        return detail::det_bareiss(syl, [](const Polynomial& a, const Polynomial& b) {
            return divide_exact(a, b);
        });
    }

    // Canonical scalar normalization: integral coefficients with content 1 and
    // a sign-normalized leading coefficient. Returns zero unchanged.
    Polynomial primitive_part() const {
        if (is_zero()) return *this;
        Int den(1);
        for (const auto& [e, c] : terms_) {
            den = lcm(den, c.a().get_den());
            den = lcm(den, c.b().get_den());
        }
        Int num(0);
        for (const auto& [e, c] : terms_) {
            num = gcd(num, Int(c.a().get_num() * (den / c.a().get_den())));
            num = gcd(num, Int(c.b().get_num() * (den / c.b().get_den())));
        }
        Eisenstein scale{make_rational(den, num), Rational(0)};
        Polynomial r = scale * *this;
        const Eisenstein lc = r.leading_term().coeff;
        if (lc.a() < 0 || (lc.a() == 0 && lc.b() < 0)) r = Eisenstein(-1) * r;
        return r;
    }

    static bool equal_up_to_scalar(const Polynomial& f, const Polynomial& g) {
        if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
        return f.leading_term().coeff.inverse() * f == g.leading_term().coeff.inverse() * g;
    }

    std::string to_string(const std::array<std::string, N>& names) const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (!first) out << " + ";
            first = false;
            out << "(" << c.to_string() << ")";
            for (int i = 0; i < N; ++i) {
                if (e[i] == 0) continue;
                out << "*" << names[i];
                if (e[i] > 1) out << "^" << e[i];
            }
        }
        return out.str();
    }

  private:
    static int check_var(int var) {
        if (var < 0 || var >= N) throw std::invalid_argument("polynomial: variable index out of range");
        return var;
    }

    void add_term(const Exponents& e, const Eisenstein& c) {
        for (int i = 0; i < N; ++i)
            if (e[i] < 0) throw std::invalid_argument("polynomial: negative exponent");
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else if (c.is_zero()) {
            terms_.erase(it);
        }
    }

    template <class R, class A>
    std::array<std::vector<R>, N> power_table(const A& base, const R& one) const {
        std::array<int, N> maxdeg{};
        for (const auto& [e, c] : terms_)
            for (int i = 0; i < N; ++i) maxdeg[i] = std::max(maxdeg[i], e[i]);
        std::array<std::vector<R>, N> powers;
        for (int i = 0; i < N; ++i) {
            powers[i].reserve(maxdeg[i] + 1);
            powers[i].push_back(one);
            for (int k = 1; k <= maxdeg[i]; ++k) powers[i].push_back(powers[i][k - 1] * base[i]);
        }
        return powers;
    }

    std::map<Exponents, Eisenstein, GradedLexGreater<N>> terms_;
};

// Homogeneous forms in x0, x1, x2 (or dual coordinates xi0, xi1, xi2) are the
// three-variable case; homogeneity is a property checked where required, not
// a structural invariant of the type.
using HomogPoly = Polynomial<3>;

}  // namespace ninecusps
