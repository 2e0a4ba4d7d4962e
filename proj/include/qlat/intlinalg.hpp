#pragma once

#include <optional>

#include "eigen_support.hpp"

// Exact integer/rational linear algebra on row lattices: Hermite normal
// form, kernels, determinants, membership.  Rows are generators; maps act
// on the right.

namespace qlat {

// Row-style HNF of the row span of A: returns an r x n matrix, r = rank,
// upper trapezoidal, positive pivots, entries above each pivot reduced to
// [0, pivot).  Zero rows are dropped.
MatI hnf(MatI a);

// As hnf(), but also returns U (rows x rows, unimodular) with U*A row
// equivalent to the result padded by zero rows: the first r rows of U*A
// are the HNF, the rest vanish.
MatI hnf_with_transform(MatI a, MatI& u_out);

// Basis of { x : x * A = 0 } as rows, in HNF.
MatI kernel(const MatI& a);

// Determinant of a square matrix (fraction-free Bareiss).
Int det_bareiss(MatI a);
Rat det_rational(MatQ a);

// Basis (n x n, HNF) of { x in Z^n : x * F = 0 mod q }.
MatI preimage_mod(const MatI& f, Int q);

// Coordinates x with x * B = v for full-row-rank B in HNF-able position;
// nullopt when v is not in the row span over Z.
std::optional<RowI> solve_in_span(const MatI& basis, const RowI& v);

// Solve x * B = v over the rationals (B square nonsingular).
RowQ solve_rational(const MatQ& basis, const RowQ& v);

bool in_span(const MatI& basis, const RowI& v);

// Common denominator form: A = num / den with den > 0 minimal.
void to_common_den(const MatQ& a, MatI& num, Int& den);

} // namespace qlat
