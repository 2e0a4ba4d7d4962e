#pragma once

#include <utility>
#include <vector>

#include "checked_int.hpp"

namespace qlat {

std::vector<Int> primes_up_to(Int n);
bool is_prime(Int n);

// Prime factorization of n > 0 by trial division (inputs are desk-scale).
std::vector<std::pair<Int, int>> factor(Int n);
std::vector<Int> prime_divisors(Int n);
bool is_squarefree(Int n);
int omega(Int n); // number of distinct prime divisors
int valuation(Int n, Int p);

// Kronecker symbol (a|n), full domain.
int kronecker(Int a, Int n);

// Hilbert symbol (a,b)_p for nonzero integers at a finite prime p (p = 2
// allowed), and at the real place.
int hilbert_symbol(Int a, Int b, Int p);
int hilbert_symbol_inf(Int a, Int b);

// Finite ramification set of the quaternion algebra (a,b): primes p with
// (a,b)_p = -1.  Sorted.
std::vector<Int> quaternion_ramification(Int a, Int b);

} // namespace qlat
