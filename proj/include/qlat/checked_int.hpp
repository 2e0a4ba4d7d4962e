#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "errors.hpp"

namespace qlat {

// Int: fixed-width checked integer on 128-bit storage.  Addition,
// subtraction and multiplication throw qlat::overflow_error instead of
// wrapping.  Division helpers are free functions with explicit semantics
// (exact_div, floor_div, ...).
struct Int {
  __int128 v = 0;

  Int() = default;
  Int(int x) : v(x) {}
  Int(long x) : v(x) {}
  Int(long long x) : v(x) {}
  Int(unsigned x) : v(x) {}
  explicit Int(unsigned long long x) : v(static_cast<__int128>(x)) {}
  explicit Int(__int128 x) : v(x) {}

  friend Int operator+(Int a, Int b) {
    __int128 r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw overflow_error("Int: + overflow");
    return Int(r);
  }
  friend Int operator-(Int a, Int b) {
    __int128 r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw overflow_error("Int: - overflow");
    return Int(r);
  }
  friend Int operator*(Int a, Int b) {
    __int128 r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw overflow_error("Int: * overflow");
    return Int(r);
  }
  Int operator-() const {
    __int128 r;
    if (__builtin_sub_overflow(static_cast<__int128>(0), v, &r)) throw overflow_error("Int: negate overflow");
    return Int(r);
  }
  // Truncating division, C semantics; checked against the MIN/-1 corner.
  friend Int operator/(Int a, Int b) {
    if (b.v == 0) throw overflow_error("Int: division by zero");
    if (b.v == -1) return -a;
    return Int(a.v / b.v);
  }
  friend Int operator%(Int a, Int b) {
    if (b.v == 0) throw overflow_error("Int: modulo by zero");
    if (b.v == -1) return Int(0);
    return Int(a.v % b.v);
  }

  Int& operator+=(Int b) { *this = *this + b; return *this; }
  Int& operator-=(Int b) { *this = *this - b; return *this; }
  Int& operator*=(Int b) { *this = *this * b; return *this; }
  Int& operator/=(Int b) { *this = *this / b; return *this; }

  friend bool operator==(Int a, Int b) { return a.v == b.v; }
  friend bool operator!=(Int a, Int b) { return a.v != b.v; }
  friend bool operator<(Int a, Int b) { return a.v < b.v; }
  friend bool operator<=(Int a, Int b) { return a.v <= b.v; }
  friend bool operator>(Int a, Int b) { return a.v > b.v; }
  friend bool operator>=(Int a, Int b) { return a.v >= b.v; }

  bool is_zero() const { return v == 0; }
  int sign() const { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
  bool is_even() const { return (v & 1) == 0; }

  bool fits_i64() const { return v >= INT64_MIN && v <= INT64_MAX; }
  std::int64_t to_i64() const {
    if (!fits_i64()) throw overflow_error("Int: does not fit in 64 bits");
    return static_cast<std::int64_t>(v);
  }
};

inline Int abs(Int a) { return a.v < 0 ? -a : a; }

inline Int gcd(Int a, Int b) {
  __int128 x = a.v < 0 ? -a.v : a.v;
  __int128 y = b.v < 0 ? -b.v : b.v;
  while (y != 0) {
    __int128 t = x % y;
    x = y;
    y = t;
  }
  return Int(x);
}

inline Int lcm(Int a, Int b) {
  if (a.is_zero() || b.is_zero()) return Int(0);
  return abs(a / gcd(a, b) * b);
}

// Exact division; throws consistency_error when b does not divide a.
inline Int exact_div(Int a, Int b, const char* what = "exact_div") {
  if (b.is_zero()) throw overflow_error("Int: exact division by zero");
  if (!((a % b).is_zero())) throw consistency_error(std::string(what) + ": division not exact");
  return a / b;
}

inline Int floor_div(Int a, Int b) {
  if (b.is_zero()) throw overflow_error("Int: floor division by zero");
  Int q = a / b, r = a % b;
  if (!r.is_zero() && ((r.v < 0) != (b.v < 0))) q -= 1;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

// Floor of the square root of a nonnegative Int.
inline Int isqrt(Int n) {
  if (n.v < 0) throw input_error("isqrt: negative argument");
  if (n.v == 0) return Int(0);
  __int128 x = static_cast<__int128>(__builtin_sqrtl(static_cast<long double>(n.v)));
  while (x > 0 && x * x > n.v) --x;
  while ((x + 1) * (x + 1) <= n.v) ++x;
  return Int(x);
}

// True when n is a perfect square; sqrt_out receives the root.
inline bool is_square(Int n, Int* sqrt_out = nullptr) {
  if (n.v < 0) return false;
  Int r = isqrt(n);
  if (r * r == n) {
    if (sqrt_out) *sqrt_out = r;
    return true;
  }
  return false;
}

inline Int pow_int(Int base, int e) {
  Int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline std::string to_string(Int a) {
  if (a.v == 0) return "0";
  bool neg = a.v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(a.v + 1)) + 1
                            : static_cast<unsigned __int128>(a.v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

inline std::ostream& operator<<(std::ostream& os, Int a) { return os << to_string(a); }

} // namespace qlat
