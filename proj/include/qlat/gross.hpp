#pragma once

#include <cstdint>

#include "quatorder.hpp"
#include "shortvec.hpp"

namespace qlat {

// Rank-3 trace-zero lattice (2R + Z) in the pure quaternions of an order R,
// with Q = reduced norm.  gram is the bilinear Gram: diagonal 2Q(b_i),
// off-diagonal B(b_i, b_j) = Q(b_i+b_j) - Q(b_i) - Q(b_j); the Q-Gram is
// gram/2 and its determinant is det(gram)/8.
struct TernaryLattice {
  Mat3I gram;
  Int delta{0}, level{0}; // provenance when built from an order
  int class_index{-1};
  Rat qdet() const;
};

TernaryLattice gross_lattice(const QuatAlgebra& B, const QuatLattice& order_lat);
TernaryLattice gross_lattice(const QuatOrder& R);

// #{x : Q(x) = m}; 1 for m = 0.
Int rep_number(const TernaryLattice& L, Int m);
// Same, restricted to x with coordinate gcd 1.
Int primitive_rep_number(const TernaryLattice& L, Int m);
// All coefficients 0..bound in one enumeration pass.
TernaryTheta theta_coeffs(const TernaryLattice& L, std::int64_t bound);

} // namespace qlat
