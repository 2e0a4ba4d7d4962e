#include "qlat/quadratic.hpp"

#include <numeric>

#include "qlat/errors.hpp"
#include "qlat/rational.hpp"

namespace qlat {

namespace {

Int mod4(Int a) { return ((a % 4) + 4) % 4; }

void check_discriminant(Int d) {
  if (d >= Int(0) || (mod4(d) != Int(0) && mod4(d) != Int(1)))
    throw input_error("not an imaginary quadratic discriminant: " + to_string(d));
}

} // namespace

bool is_fundamental(Int D) {
  if (D >= Int(0)) return false;
  if (mod4(D) == Int(1)) return is_squarefree(-D);
  if (mod4(D) != Int(0)) return false;
  Int m = D / 4;
  Int r = mod4(m);
  return (r == Int(2) || r == Int(3)) && is_squarefree(-m);
}

QuadOrder factor_discriminant(Int d) {
  check_discriminant(d);
  Int c0 = 1;
  for (auto& [p, e] : factor(-d)) c0 *= pow_int(p, e / 2);
  Int m = exact_div(d, c0 * c0, "factor_discriminant");
  if (mod4(m) == Int(1)) return {m, c0};
  // m = 2,3 mod 4 forces c0 even (else d = 2,3 mod 4).
  return {Int(4) * m, exact_div(c0, Int(2), "factor_discriminant")};
}

Int class_number_bruteforce(Int d) {
  check_discriminant(d);
  std::int64_t dd = (-d).to_i64();
  std::int64_t count = 0;
  for (std::int64_t a = 1; 3 * a * a <= dd; ++a) {
    for (std::int64_t b = -a; b <= a; ++b) {
      std::int64_t num = b * b + dd; // = 4ac
      if (num % (4 * a)) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;
    }
  }
  return Int(count);
}

std::vector<std::uint16_t> class_number_table(std::int64_t limit) {
  if (limit < 0) throw input_error("class_number_table: negative limit");
  std::vector<std::uint16_t> h(static_cast<size_t>(limit) + 1, 0);
  for (std::int64_t a = 1; 3 * a * a <= limit; ++a) {
    for (std::int64_t b = 0; b <= a; ++b) {
      std::int64_t g0 = std::gcd(a, b);
      std::int64_t d0 = 4 * a * a - b * b; // |disc| at c = a
      if (g0 == 1) {
        // primitive for every c
        std::int64_t d = d0;
        if (d <= limit) {
          h[static_cast<size_t>(d)] += 1; // c = a
          d += 4 * a;
          for (; d <= limit; d += 4 * a) h[static_cast<size_t>(d)] += (b > 0 && b < a) ? 2 : 1;
        }
      } else {
        std::int64_t d = d0;
        for (std::int64_t c = a; d <= limit; ++c, d += 4 * a) {
          if (std::gcd(g0, c) != 1) continue;
          h[static_cast<size_t>(d)] += (b > 0 && b < a && a < c) ? 2 : 1;
        }
      }
    }
  }
  return h;
}

Int unit_count(Int D, Int c) {
  if (!is_fundamental(D)) throw input_error("unit_count: D not fundamental");
  if (c < Int(1)) throw input_error("unit_count: conductor < 1");
  if (c == Int(1)) {
    if (D == Int(-3)) return Int(6);
    if (D == Int(-4)) return Int(4);
  }
  return Int(2);
}

Int class_number_formula(Int D, Int c) {
  if (!is_fundamental(D)) throw input_error("class_number_formula: D not fundamental");
  if (c < Int(1)) throw input_error("class_number_formula: conductor < 1");
  Int hK = class_number_bruteforce(D);
  Rat h(hK * c, 1);
  for (Int p : prime_divisors(c)) h *= Rat(p - kronecker(D, p), p);
  h /= Rat(unit_count(D, Int(1)), unit_count(D, c));
  Int out = h.to_int("class_number_formula: non-integral result");
  return out;
}

Int class_number(Int d) {
  QuadOrder o = factor_discriminant(d);
  return class_number_formula(o.D, o.c);
}

} // namespace qlat
