#pragma once

#include <vector>

#include "arith.hpp"
#include "eigen_support.hpp"

namespace qlat {

// Definite rational quaternion algebra B = (a,b | Q): i^2 = a, j^2 = b,
// k = ij = -ji.  Elements are row vectors of rational coordinates in the
// (1, i, j, k) frame.
struct QuatAlgebra {
  Int a, b;             // a < 0, b < 0
  std::vector<Int> ram; // finite ramified primes, sorted
  Int delta;            // reduced discriminant = product of ram
};

// Smallest definite (a,b), ordered by |a|+|b| then |a|, whose finite
// ramification set is exactly `ram`.  |ram| must be odd and nonempty.
QuatAlgebra build_algebra(std::vector<Int> ram);

// Verify symbols and assemble the struct for explicit (a,b).
QuatAlgebra algebra_from_pair(Int a, Int b);

RowQ qmul(const QuatAlgebra& B, const RowQ& x, const RowQ& y);
RowQ qconj(const RowQ& x);
Rat qtrd(const RowQ& x);
Rat qnrd(const QuatAlgebra& B, const RowQ& x);

RowQ qone();
RowQ qelem(Rat x0, Rat x1, Rat x2, Rat x3);

// Matrix of right multiplication by g (x*g = x * R_g) and of left
// multiplication by g (g*x = x * L_g), acting on coordinate rows.
Mat4Q right_mult_matrix(const QuatAlgebra& B, const RowQ& g);
Mat4Q left_mult_matrix(const QuatAlgebra& B, const RowQ& g);

// Inverse of an invertible element: conj(x)/nrd(x).
RowQ qinv(const QuatAlgebra& B, const RowQ& x);

} // namespace qlat
