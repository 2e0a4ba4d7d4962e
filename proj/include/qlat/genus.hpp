#pragma once

#include <cstdint>
#include <vector>

#include "gross.hpp"

namespace qlat {

struct GenusClass {
  TernaryLattice lat; // canonical Gram
  Int aut_count;      // integral isometries, -identity included
};

struct GenusSet {
  std::vector<GenusClass> classes; // sorted by canonical key
  Int bilinear_det;
};

// Isometry group order, via the canonical-form search (rank 3).
Int automorph_count(const TernaryLattice& L);

// Kneser neighbors at an odd prime p not dividing det(gram): one lattice
// per isotropic line of Q mod p, all of the same determinant.
std::vector<TernaryLattice> p_neighbors(const TernaryLattice& L, Int p);

// Hasse symbol of the rational quadratic form at p (product of Hilbert
// symbols over a rational diagonalization).
int hasse_symbol(const TernaryLattice& L, Int p);

// Closure of {L} under p-neighbors at the given odd primes (the two
// smallest admissible ones when omitted), deduplicated by canonical Gram;
// determinant and Hasse invariants asserted equal across classes.
GenusSet genus_enumerate(const TernaryLattice& L);
GenusSet genus_enumerate(const TernaryLattice& L, const std::vector<Int>& primes);

// Connected components of the p-neighbor graph on the genus classes,
// sorted, smallest member first.
std::vector<std::vector<int>> spinor_partition(const GenusSet& G, Int p);

// (sum over subset of r^?(Q_i, m)/w_i) / (sum of 1/w_i), exact.
Rat mass_averaged_rep(const GenusSet& G, const std::vector<int>& subset, Int m, bool primitive);

// Batch form: averaged coefficients 0..bound, one theta pass per class.
std::vector<Rat> mass_averaged_theta(const GenusSet& G, const std::vector<int>& subset,
                                     std::int64_t bound, bool primitive);

} // namespace qlat
