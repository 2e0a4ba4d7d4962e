#pragma once

#include <cstdint>
#include <vector>

#include "arith.hpp"
#include "checked_int.hpp"

namespace qlat {

// Imaginary quadratic order O = O_F + c*O_K, identified by the fundamental
// discriminant D of K and the conductor c.  Order discriminant d = D*c^2.
struct QuadOrder {
  Int D; // fundamental discriminant, D < 0
  Int c; // conductor, c >= 1
  Int disc() const { return D * c * c; }
};

// True iff D is a fundamental imaginary quadratic discriminant.
bool is_fundamental(Int D);

// Split d < 0, d = 0,1 mod 4 as d = D*c^2 with D fundamental.
QuadOrder factor_discriminant(Int d);

// Class number by counting reduced primitive forms (a,b,c) with
// b^2 - 4ac = d, |b| <= a <= c, b >= 0 when |b| = a or a = c, gcd(a,b,c) = 1.
Int class_number_bruteforce(Int d);

// h for every discriminant -limit <= d < 0 in one sweep over reduced forms;
// entry [|d|] holds h(d) (0 at non-discriminants).
std::vector<std::uint16_t> class_number_table(std::int64_t limit);

// #O_{D,c}^x: 6 for (-3,1), 4 for (-4,1), else 2.
Int unit_count(Int D, Int c);

// h(O_c) = h(O_K) * c / [O_K^x : O_c^x] * prod_{p | c} (1 - (D|p)/p),
// evaluated in exact rationals; integrality is asserted.
Int class_number_formula(Int D, Int c);

// h(d) via factor_discriminant + class_number_formula.
Int class_number(Int d);

} // namespace qlat
