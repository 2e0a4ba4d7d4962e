#pragma once

#include <string>
#include <vector>

#include "ideals.hpp"

namespace qlat {

enum class DivisorClass { ordinary, supersingular, superspecial, smooth_supersingular };
std::string divisor_class_name(DivisorClass c);

// Reduction type at p of a CM divisor of fundamental discriminant D on the
// curve of (squarefree, even-factor-count) discriminant delta and level.
// p dividing delta with D split at p is rejected as input.
DivisorClass classify_divisor(Int delta, Int level, Int p, Int D);

// Genus of the curve: 1 + phi(delta) psi(level)/12 - e2/4 - e3/3, with e2
// and e3 the counts of order-4 and order-6 elliptic points; integrality of
// the rational formula is asserted.
Int shimura_genus(Int delta, Int level);

struct SupersingularCount {
  bool applicable; // the (p-1)(g-1) count needs genus >= 2
  Int count;
};
SupersingularCount supersingular_count(Int p, Int genus);

// Closed class-number formula for a definite Eichler order of squarefree
// reduced discriminant delta and coprime squarefree level; validated
// against right_ideal_class_set enumeration in the tests.
Int eichler_class_number(Int delta, Int level);

// Superspecial points of the (delta, level) curve at p | delta:
// eichler_class_number(delta/p, level*p).
Int superspecial_count(Int delta, Int p, Int level);

struct DualGraph {
  Int delta, p, level;
  // unit orders (mod +-1) per vertex, one entry per class of (delta/p, level)
  std::vector<Int> vertex_units_a, vertex_units_b;
  struct Edge {
    int a, b;       // endpoint indices into families a and b
    Int unit_order; // of the edge class of (delta/p, level*p)
  };
  std::vector<Edge> edges;
  int components() const;
  Int betti() const; // #edges - #vertices + #components
};

// Special-fiber dual graph at p | delta: vertices are two copies of the
// class set of (delta/p, level), edges the class set of (delta/p,
// level*p); each edge attaches by saturating its ideal into the two
// level-`level` orders above the edge order.  betti() is checked against
// shimura_genus(delta, level).
DualGraph dual_graph(Int delta, Int p, Int level);

// "u v" per line; vertices 0..h-1 are family a, h..2h-1 family b.
std::string dual_graph_edge_list(const DualGraph& g);

struct RatioRow {
  Int D;
  std::vector<Int> rstar; // primitive representation counts per class
  Int hD;
  std::vector<Rat> ratio; // rstar / h(D)
};
struct RatioTable {
  Int delta, level;
  std::vector<RatioRow> rows; // sorted by |D|
};

// Primitive representation counts of |D| by each class lattice of the
// (delta, level) class set, against the class number h(D).  D runs over
// the negative discriminants with min_absD <= |D| <= max_absD whose
// conductor is coprime to delta*level (the locus-fundamental ones).
RatioTable ratio_experiment(Int delta, Int level, Int min_absD, Int max_absD, int threads = 1);
// Same table against a precomputed class set.
RatioTable ratio_experiment(const ClassSet& cs, Int min_absD, Int max_absD, int threads = 1);
std::string ratio_csv(const RatioTable& t);

// Largest per-class ratio over rows with lo <= |D| < hi.
Rat max_ratio_in_window(const RatioTable& t, Int lo, Int hi);

} // namespace qlat
