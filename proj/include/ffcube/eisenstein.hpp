#pragma once

#include <cstdint>
#include <string>

namespace ffcube {

/**
 * Exact element of Z[w], w = exp(2*pi*i/3), stored as a + b*w.
 * Uses w^2 = -1 - w; conjugation sends w to w^2.
 * All character sums in this library live in this ring, so checks are
 * componentwise integer comparisons and never touch floating point.
 */
struct EisensteinInt {
  std::int64_t a = 0;  // rational part coefficient
  std::int64_t b = 0;  // omega coefficient

  constexpr EisensteinInt() = default;
  constexpr EisensteinInt(std::int64_t ra, std::int64_t rb) : a(ra), b(rb) {}
  static constexpr EisensteinInt integer(std::int64_t n) { return {n, 0}; }
  static constexpr EisensteinInt omega() { return {0, 1}; }
  // w^e for e in {0,1,2}
  static constexpr EisensteinInt unit_power(int e) {
    switch (e % 3) {
      case 1: return {0, 1};
      case 2: return {-1, -1};
      default: return {1, 0};
    }
  }

  constexpr bool is_zero() const { return a == 0 && b == 0; }
  constexpr bool is_integer() const { return b == 0; }

  constexpr EisensteinInt conj() const { return {a - b, -b}; }
  // a^2 - a*b + b^2, always >= 0
  constexpr std::int64_t norm() const { return a * a - a * b + b * b; }

  constexpr EisensteinInt operator-() const { return {-a, -b}; }
  constexpr EisensteinInt operator+(const EisensteinInt& o) const { return {a + o.a, b + o.b}; }
  constexpr EisensteinInt operator-(const EisensteinInt& o) const { return {a - o.a, b - o.b}; }
  constexpr EisensteinInt operator*(const EisensteinInt& o) const {
    // (a + bw)(c + dw) = ac - bd + (ad + bc - bd)w
    return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
  }
  EisensteinInt& operator+=(const EisensteinInt& o) { a += o.a; b += o.b; return *this; }
  EisensteinInt& operator-=(const EisensteinInt& o) { a -= o.a; b -= o.b; return *this; }
  EisensteinInt& operator*=(const EisensteinInt& o) { *this = *this * o; return *this; }

  constexpr bool operator==(const EisensteinInt& o) const { return a == o.a && b == o.b; }
  constexpr bool operator!=(const EisensteinInt& o) const { return !(*this == o); }

  // "0", "-1", "w", "-1-3w", "2+w", ...
  std::string str() const;
};

inline EisensteinInt operator*(std::int64_t n, const EisensteinInt& z) {
  return {n * z.a, n * z.b};
}

std::string eisenstein_to_string(const EisensteinInt& z);

inline std::string EisensteinInt::str() const { return eisenstein_to_string(*this); }

}  // namespace ffcube
