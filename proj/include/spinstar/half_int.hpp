#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace spinstar {

/// Angular-momentum quantum number held exactly as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    /// Integer value; only meaningful when is_integer().
    constexpr int as_int() const { return twice_ / 2; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    constexpr HalfInt operator+(int k) const { return HalfInt(twice_ + 2 * k); }
    constexpr HalfInt operator-(int k) const { return HalfInt(twice_ - 2 * k); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string to_string() const;

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}

    int twice_ = 0;
};

/// True when m is a valid projection inside the multiplet j.
constexpr bool is_projection_of(HalfInt m, HalfInt j) {
    const int tm = m.twice();
    const int tj = j.twice();
    return tj >= 0 && tm <= tj && -tm <= tj && ((tj - tm) % 2 == 0);
}

/// Half the environment size as a HalfInt: the top J reachable by N spins.
constexpr HalfInt half_of(int n) { return HalfInt::from_twice(n); }

} // namespace spinstar
