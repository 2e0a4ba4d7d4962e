#pragma once

#include <vector>

#include "quatorder.hpp"

namespace qlat {

// Right ideals of an Eichler order O: full lattices I with I*O = I, kept
// integral (I inside O).  Classes are orbits under left multiplication by
// units of the algebra.

struct RightIdeal {
  QuatLattice lat;
  Int nr; // reduced norm, the gcd of nrd over the lattice
};

Int ideal_norm(const QuatAlgebra& B, const QuatLattice& I);

// Integral even Gram trd(b_i conj(b_j)) / nr; determinant (delta*level)^2,
// invariant under left multiplication.
MatI normalized_even_gram(const QuatAlgebra& B, const QuatLattice& I, Int nr);

// The p+1 right-O sublattices J between pI and I, each of norm p*nr(I).
// p must be prime to the reduced discriminant of O.
std::vector<QuatLattice> neighbors(const QuatOrder& O, const QuatLattice& I, Int p);

// Replace I by (conj(x)/nr(I)) * I for a shortest nonzero x in I: an
// integral ideal of the same class with norm nrd(x)/nr(I).
RightIdeal reduce_ideal(const QuatOrder& O, const QuatLattice& I);

// Left order (1/nr(I)) I conj(I); same reduced discriminant as O.
QuatOrder left_order(const QuatOrder& O, const RightIdeal& I);

// Same class test: some y with J = y*I, equivalently an element of
// J*conj(I) of reduced norm nr(I)*nr(J).
bool is_isomorphic(const QuatAlgebra& B, const RightIdeal& I, const RightIdeal& J);

struct IdealClass {
  RightIdeal ideal;
  MatI canonical_gram;  // canonical form of the normalized even Gram
  std::vector<Int> key; // its flattening, the sort key of the class
  Int unit_count;       // #(O_l(I)^x / +-1), the weight w of the class
};

struct ClassSet {
  QuatOrder order;
  std::vector<IdealClass> classes;
  Rat mass; // sum over classes of 1/w, equal to eichler_mass
  Int neighbor_prime;
};

// phi(delta) * psi(level) / 12, the certified total of sum 1/w.
Rat eichler_mass(Int delta, Int level);

// All right ideal classes of O by the p-neighbor walk at the smallest
// good prime, complete when the masses add up; a second prime is tried
// if the first walk stalls early.
ClassSet right_ideal_class_set(const QuatOrder& O);

} // namespace qlat
