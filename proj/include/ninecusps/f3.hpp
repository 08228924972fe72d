#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace ninecusps {

// The field with three elements. Values are the residues 0, 1, 2.
class F3 {
  public:
    constexpr F3() : v_(0) {}
    constexpr explicit F3(long v) : v_(static_cast<std::uint8_t>(((v % 3) + 3) % 3)) {}

    constexpr int value() const { return v_; }
    constexpr bool is_zero() const { return v_ == 0; }

    friend constexpr F3 operator+(F3 x, F3 y) { return F3(x.v_ + y.v_); }
    friend constexpr F3 operator-(F3 x, F3 y) { return F3(x.v_ + 3 - y.v_); }
    friend constexpr F3 operator*(F3 x, F3 y) { return F3(x.v_ * y.v_); }
    friend constexpr F3 operator-(F3 x) { return F3(3 - x.v_); }

    F3& operator+=(F3 y) { return *this = *this + y; }
    F3& operator-=(F3 y) { return *this = *this - y; }
    F3& operator*=(F3 y) { return *this = *this * y; }

    // 1 and 2 are their own inverses.
    constexpr F3 inverse() const {
        if (v_ == 0) throw std::domain_error("F3: inverse of zero");
        return *this;
    }
    friend constexpr F3 operator/(F3 x, F3 y) { return x * y.inverse(); }

    friend constexpr bool operator==(F3 x, F3 y) = default;
    friend constexpr auto operator<=>(F3 x, F3 y) = default;

  private:
    std::uint8_t v_;
};

}  // namespace ninecusps
