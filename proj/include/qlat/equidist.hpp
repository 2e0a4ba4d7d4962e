#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "genus.hpp"
#include "ideals.hpp"
#include "quadratic.hpp"

namespace qlat {

// Finitely supported measure on labeled points.  Weights are exact and
// never silently renormalized: `normalized` records whether they sum to 1.
struct WeightedMeasure {
  std::vector<std::string> support;
  std::vector<Rat> weights;
  bool normalized{false};
  Rat total() const;
};

// Optimal-embedding counts of the quadratic order of discriminant D c^2
// into the left orders of the ideal classes, plus their total.
struct EmbeddingCount {
  Int D, c;
  std::vector<Int> counts;
  Int total;
};

// Trace-zero lattices of the left orders, aligned with cs.classes.
std::vector<TernaryLattice> class_gross_lattices(const ClassSet& cs);

// count = prim_rep * u_{D,c} / (2 * class_weight); integrality asserted.
Int embedding_from_rep(Int prim_rep, Int class_weight, Int D, Int c);

// Per-class counts via the representation correspondence: the number of
// optimal embeddings modulo units equals the primitive representation
// count of |D| c^2 by the class's trace-zero lattice, times u/(2w).
EmbeddingCount embedding_number(const ClassSet& cs, const std::vector<TernaryLattice>& gross,
                                Int D, Int c);

// Independent oracle: enumerate the elements of R with reduced trace t and
// reduced norm (t^2 + |D| c^2)/4 that generate the conductor-c order
// optimally, and count conjugation orbits under R^x.
Int embedding_count_bruteforce(const QuatOrder& R, Int D, Int c);

// mu_{D,c}: weights h_i / (2^{omega_n + eps} * h(D c^2)); zero totals give
// the zero measure with normalized = false.
WeightedMeasure mu_Dc(const EmbeddingCount& E, int omega_n, int eps);

// Limit measure: weights proportional to 1/w_i, normalized.
WeightedMeasure mu_canonical(const ClassSet& cs);

// (1/2) sum_i |a_i - b_i|; supports must match.
Rat tv_distance(const WeightedMeasure& a, const WeightedMeasure& b);

struct ConvergenceRow {
  Int D, c, absnorm; // absnorm = |D| c^2
  std::vector<Rat> mu;
  bool normalized;
  Rat tv;
};

struct ConvergenceTable {
  Int delta, level, p;
  bool superspecial; // true when p divides the level
  std::vector<std::string> support;
  std::vector<ConvergenceRow> rows; // sorted by absnorm, then |D|
  std::string diagnostic;           // nonempty when no admissible pairs exist
};

// Reduction-measure convergence experiment over the class set of (delta,
// level).  p | delta: supersingular reduction of conductor-c CM points
// with kronecker(D,p) in {-1,0}, eps = 1, omega of the level.  p | level:
// superspecial reduction, kronecker(D,p) = 0, eps = 0, omega(level/p).
// D runs over fundamental discriminants with min_absD <= |D| <= max_absD
// that keep the locus nonempty; c over 1..max_c coprime to p and the level.
ConvergenceTable convergence_experiment(Int delta, Int level, Int p, Int min_absD,
                                        Int max_absD, Int max_c, int threads = 1);
// Same experiment against a precomputed class set (delta and the level are
// read off cs.order).
ConvergenceTable convergence_experiment(const ClassSet& cs, Int p, Int min_absD,
                                        Int max_absD, Int max_c, int threads = 1);
std::string convergence_csv(const ConvergenceTable& t);

struct SlopeReport {
  std::vector<int> points;    // usable (nonzero-deviation) samples per class
  std::vector<double> slopes; // fitted exponent of |r*_i - r*_avg| in |D|
  std::vector<bool> defined;  // false when fewer than 8 usable points
};

// Least-squares slope of log "deviation from the genus average" against
// log |D| for each genus class of the (delta, level) trace-zero lattices,
// over fundamental D with min_absD <= |D| <= max_absD.
SlopeReport deviation_slope(Int delta, Int level, Int min_absD, Int max_absD);

// Limit measure on the dual-graph vertices (two copies of the class set
// of (delta/p, level)): weights proportional to 1/w, normalized.  delta is
// the squarefree discriminant of the degenerating curve, p | delta.
WeightedMeasure smooth_locus_measure(Int delta, Int p, Int level);

} // namespace qlat
