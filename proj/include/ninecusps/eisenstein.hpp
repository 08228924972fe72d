#pragma once

#include <string>
#include <utility>

#include "ninecusps/rational.hpp"

namespace ninecusps {

// Element a + b*w of Q(w), where w is a primitive cube root of unity.
// Arithmetic uses w^2 = -1 - w; conjugation maps w to w^2.
class Eisenstein {
  public:
    Eisenstein() = default;
    Eisenstein(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}
    Eisenstein(const Rational& a) : a_(a) {}  // NOLINT: rationals embed implicitly
    Eisenstein(long a) : a_(Rational(a)) {}   // NOLINT

    static Eisenstein omega() { return {Rational(0), Rational(1)}; }

    // w^k with k reduced mod 3 (negative k allowed).
    static Eisenstein omega_pow(long k) {
        switch (((k % 3) + 3) % 3) {
            case 0: return {Rational(1), Rational(0)};
            case 1: return omega();
            default: return {Rational(-1), Rational(-1)};  // w^2 = -1 - w
        }
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    Rational rational_value() const {
        if (!is_rational()) throw std::invalid_argument("eisenstein: not rational: " + to_string());
        return a_;
    }

    Eisenstein conjugate() const { return {a_ - b_, -b_}; }

    // Norm (a + b*w)(a + b*w^2) = a^2 - a*b + b^2; zero only at zero.
    Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

    friend Eisenstein operator+(const Eisenstein& x, const Eisenstein& y) {
        return {x.a_ + y.a_, x.b_ + y.b_};
    }
    friend Eisenstein operator-(const Eisenstein& x, const Eisenstein& y) {
        return {x.a_ - y.a_, x.b_ - y.b_};
    }
    friend Eisenstein operator-(const Eisenstein& x) { return {-x.a_, -x.b_}; }

    friend Eisenstein operator*(const Eisenstein& x, const Eisenstein& y) {
        // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
        Rational ac = x.a_ * y.a_;
        Rational bd = x.b_ * y.b_;
        return {ac - bd, x.a_ * y.b_ + x.b_ * y.a_ - bd};
    }

    Eisenstein inverse() const {
        if (is_zero()) throw std::domain_error("eisenstein: inverse of zero");
        Rational n = norm();
        Eisenstein c = conjugate();
        return {c.a_ / n, c.b_ / n};
    }
    friend Eisenstein operator/(const Eisenstein& x, const Eisenstein& y) {
        return x * y.inverse();
    }

    Eisenstein& operator+=(const Eisenstein& y) { return *this = *this + y; }
    Eisenstein& operator-=(const Eisenstein& y) { return *this = *this - y; }
    Eisenstein& operator*=(const Eisenstein& y) { return *this = *this * y; }

    friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

    // "a", "b*w" or "a+b*w" / "a-b*w" with rational components.
    std::string to_string() const {
        if (b_ == 0) return ninecusps::to_string(a_);
        std::string w = ninecusps::to_string(abs(b_)) + "*w";
        std::string sign = b_ < 0 ? "-" : "+";
        if (a_ == 0) return b_ < 0 ? sign + w : w;
        return ninecusps::to_string(a_) + sign + w;
    }

  private:
    Rational a_;
    Rational b_;
};

inline std::string to_string(const Eisenstein& z) { return z.to_string(); }

}  // namespace ninecusps
