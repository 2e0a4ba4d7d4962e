#pragma once

#include <string>

#include "checked_int.hpp"

namespace qlat {

// Rat: exact rational over checked 128-bit integers.  Always normalized:
// den > 0, gcd(|num|, den) = 1.
struct Rat {
  Int num{0};
  Int den{1};

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}
  Rat(int n) : num(n), den(1) {}
  Rat(long long n) : num(n), den(1) {}
  Rat(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den.is_zero()) throw overflow_error("Rat: zero denominator");
    if (den.v < 0) { num = -num; den = -den; }
    Int g = gcd(num, den);
    if (g.v > 1) { num = num / g; den = den / g; }
    if (num.is_zero()) den = 1;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_integer() const { return den == Int(1); }
  int sign() const { return num.sign(); }

  Int to_int(const char* what = "Rat::to_int") const {
    if (!is_integer()) throw consistency_error(std::string(what) + ": not an integer");
    return num;
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    Int g = gcd(a.den, b.den);
    Int bd = b.den / g;
    return Rat(a.num * bd + b.num * (a.den / g), a.den * bd);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    Int g = gcd(a.den, b.den);
    Int bd = b.den / g;
    return Rat(a.num * bd - b.num * (a.den / g), a.den * bd);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    Int g1 = gcd(a.num, b.den), g2 = gcd(b.num, a.den);
    Rat r;
    r.num = (a.num / g1) * (b.num / g2);
    r.den = (a.den / g2) * (b.den / g1);
    if (r.num.is_zero()) r.den = 1;
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw overflow_error("Rat: division by zero");
    return a * Rat(b.den, b.num);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num = -r.num;
    return r;
  }

  Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
  Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
  Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }
  Rat& operator/=(const Rat& b) { *this = *this / b; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return (a.num * b.den) < (b.num * a.den); }
  friend bool operator<=(const Rat& a, const Rat& b) { return (a.num * b.den) <= (b.num * a.den); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }
};

inline Rat abs(const Rat& a) { return a.sign() < 0 ? -a : a; }

inline Int floor_rat(const Rat& a) { return floor_div(a.num, a.den); }
inline Int ceil_rat(const Rat& a) { return ceil_div(a.num, a.den); }

// "p/q" (or "p" when integral) — the serialization format used everywhere.
inline std::string to_string(const Rat& a) {
  if (a.is_integer()) return to_string(a.num);
  return to_string(a.num) + "/" + to_string(a.den);
}

inline std::ostream& operator<<(std::ostream& os, const Rat& a) { return os << to_string(a); }

// Greatest n with n*n <= a, for rational a >= 0.
inline Int floor_sqrt(const Rat& a) {
  if (a.sign() < 0) throw input_error("floor_sqrt: negative argument");
  Int r = isqrt(a.num * a.den) / a.den;
  while (Rat((r + 1) * (r + 1)) <= a) r += 1;
  while (Rat(r * r) > a) r -= 1;
  return r;
}

// Exact decimal rendering with `sig` significant digits (round half away
// from zero).  Used for the tv column; everything else serializes as p/q.
inline std::string decimal_string(const Rat& a, int sig) {
  if (a.is_zero()) return "0";
  bool neg = a.sign() < 0;
  Int n = abs(a.num), d = a.den;
  // e = number of digits before the decimal point (<= 0 for values < 1).
  int e = 0;
  if (n >= d) {
    Int hi = d;
    while (n >= hi) { hi *= 10; ++e; }
  } else {
    Int scaled = n;
    while (scaled < d) { scaled *= 10; --e; }
    e += 1;
  }
  // digits = round(n / d * 10^(sig - e))
  Int num2 = n, den2 = d;
  int shift = sig - e;
  if (shift >= 0) num2 = num2 * pow_int(10, shift);
  else den2 = den2 * pow_int(10, -shift);
  Int q = num2 / den2, r = num2 % den2;
  if (r * 2 >= den2) q += 1;
  std::string digits = to_string(q);
  if (static_cast<int>(digits.size()) > sig) { ++e; digits.pop_back(); } // rounding carried over
  std::string out;
  if (neg) out += "-";
  if (e <= 0) {
    out += "0.";
    out += std::string(-e, '0');
    out += digits;
  } else if (e >= static_cast<int>(digits.size())) {
    out += digits + std::string(e - digits.size(), '0');
  } else {
    out += digits.substr(0, e) + "." + digits.substr(e);
  }
  return out;
}

} // namespace qlat
