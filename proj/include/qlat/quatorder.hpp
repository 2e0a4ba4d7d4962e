#pragma once

#include "intlinalg.hpp"
#include "quaternion.hpp"

namespace qlat {

// Full-rank lattice in B: row span of num/den, num kept in HNF with the
// fraction reduced (gcd of den and all entries is 1).
struct QuatLattice {
  MatI num; // 4x4
  Int den{1};

  MatQ basis() const;
  RowQ element(Eigen::Index i) const; // i-th basis row as coordinates
  bool operator==(const QuatLattice& o) const { return den == o.den && num == o.num; }
};

QuatLattice lattice_from_rows(const MatQ& rows);
bool lattice_contains(const QuatLattice& L, const RowQ& x);
QuatLattice lattice_sum(const QuatLattice& a, const QuatLattice& b);
QuatLattice lattice_intersect(const QuatLattice& a, const QuatLattice& b);
// Span of all pairwise products x*y, x in a, y in b.
QuatLattice lattice_product(const QuatAlgebra& B, const QuatLattice& a, const QuatLattice& b);
QuatLattice lattice_conj(const QuatLattice& a);
QuatLattice lattice_scale(const QuatLattice& a, const Rat& s);
// [b : a] for a subset b, as a positive rational (index of a in b when integral).
Rat lattice_index(const QuatLattice& sup, const QuatLattice& sub);

// Q-Gram of the reduced norm on the lattice basis: G(i,j) = trd(b_i conj(b_j))/2.
MatQ nrd_gram(const QuatAlgebra& B, const QuatLattice& L);

// Reduced discriminant: sqrt(|det trd(b_i conj(b_j))|), asserted a perfect square.
Int discrd(const QuatAlgebra& B, const QuatLattice& L);

// Contains 1, closed under multiplication, integral trd and nrd.
bool is_order(const QuatAlgebra& B, const QuatLattice& L);

struct QuatOrder {
  QuatAlgebra alg;
  QuatLattice lat;
  Int level{1}; // Eichler level N; reduced discriminant is alg.delta * level
};

QuatOrder standard_order(const QuatAlgebra& B); // Z<1,i,j,k>

// Maximal order containing the standard order, by repeated index-q
// enlargement at primes q where the discriminant exceeds delta.
QuatOrder maximal_order(const QuatAlgebra& B);

// Eichler suborder of level N (squarefree, coprime to delta) inside a
// maximal order, cut out at each p | N by a rank-1 idempotent of O/pO.
QuatOrder eichler_order(const QuatOrder& O, Int N);

// Rank-1 idempotent of O/pO as an element of O (coordinates of the lift).
RowQ splitting_idempotent(const QuatOrder& O, Int p);

// The other maximal order above the level-p Eichler order cut out by eps:
// right order of the kernel ideal {x : x*eps = 0 mod pO} + pO.
QuatOrder other_maximal_above(const QuatOrder& O, Int p, const RowQ& eps);

// #(O^x / {+-1}): count of norm-1 elements up to sign.
Int unit_order(const QuatAlgebra& B, const QuatLattice& L);

} // namespace qlat
