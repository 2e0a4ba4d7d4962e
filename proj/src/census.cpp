#include "qlat/census.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>

#include "qlat/equidist.hpp"
#include "qlat/errors.hpp"
#include "qlat/gross.hpp"
#include "qlat/intlinalg.hpp"
#include "qlat/quadratic.hpp"
#include "qlat/quaternion.hpp"
#include "qlat/quatorder.hpp"

namespace qlat {

std::string divisor_class_name(DivisorClass c) {
  switch (c) {
    case DivisorClass::ordinary: return "ordinary";
    case DivisorClass::supersingular: return "supersingular";
    case DivisorClass::superspecial: return "superspecial";
    case DivisorClass::smooth_supersingular: return "smooth-supersingular";
  }
  throw input_error("divisor_class_name: bad enum");
}

namespace {

void validate_curve(Int delta, Int level, const char* what) {
  if (delta < Int(1) || !is_squarefree(delta) || omega(delta) % 2 != 0)
    throw input_error(std::string(what) + ": discriminant must be squarefree with an even number of prime factors");
  if (level < Int(1) || !is_squarefree(level) || gcd(delta, level) != Int(1))
    throw input_error(std::string(what) + ": level must be squarefree and coprime to the discriminant");
}

// prod over p | delta of (1 - kronecker(d, p)) times prod over q | level
// of (1 + kronecker(d, q)): the elliptic-point count for d in {-4, -3}.
Int elliptic_count(Int d, Int delta, Int level) {
  Int e(1);
  for (const Int& p : prime_divisors(delta)) e *= Int(1 - kronecker(d, p));
  for (const Int& q : prime_divisors(level)) e *= Int(1 + kronecker(d, q));
  return e;
}

} // namespace

DivisorClass classify_divisor(Int delta, Int level, Int p, Int D) {
  validate_curve(delta, level, "classify_divisor");
  if (!is_prime(p)) throw input_error("classify_divisor: p must be prime");
  if ((level % p).is_zero()) throw input_error("classify_divisor: p must not divide the level");
  if (!is_fundamental(D)) throw input_error("classify_divisor: D not fundamental");
  int k = kronecker(D, p);
  if ((delta % p).is_zero()) {
    if (k == 0) return DivisorClass::superspecial;
    if (k == -1) return DivisorClass::smooth_supersingular;
    throw input_error("classify_divisor: p splits in the CM field but ramifies in the algebra");
  }
  return k == 1 ? DivisorClass::ordinary : DivisorClass::supersingular;
}

Int shimura_genus(Int delta, Int level) {
  validate_curve(delta, level, "shimura_genus");
  if (delta == Int(1)) throw input_error("shimura_genus: discriminant 1 is not a compact curve");
  Rat g = Rat(1) + eichler_mass(delta, level) - Rat(elliptic_count(Int(-4), delta, level), Int(4)) -
          Rat(elliptic_count(Int(-3), delta, level), Int(3));
  return g.to_int("shimura_genus: formula not integral");
}

SupersingularCount supersingular_count(Int p, Int genus) {
  if (!is_prime(p)) throw input_error("supersingular_count: p must be prime");
  if (genus < Int(2)) return {false, Int(0)};
  return {true, (p - Int(1)) * (genus - Int(1))};
}

Int eichler_class_number(Int delta, Int level) {
  if (delta < Int(2) || !is_squarefree(delta) || omega(delta) % 2 != 1)
    throw input_error("eichler_class_number: discriminant must be squarefree with an odd number of prime factors");
  if (level < Int(1) || !is_squarefree(level) || gcd(delta, level) != Int(1))
    throw input_error("eichler_class_number: level must be squarefree and coprime");
  Rat h = eichler_mass(delta, level) + Rat(elliptic_count(Int(-4), delta, level), Int(4)) +
          Rat(elliptic_count(Int(-3), delta, level), Int(3));
  return h.to_int("eichler_class_number: formula not integral");
}

Int superspecial_count(Int delta, Int p, Int level) {
  validate_curve(delta, level, "superspecial_count");
  if (!is_prime(p) || !(delta % p).is_zero())
    throw input_error("superspecial_count: p must be a prime divisor of the discriminant");
  return eichler_class_number(exact_div(delta, p, "superspecial_count"), level * p);
}

namespace {

// {x in O : x*eps in p*O} + p*O, a left O-ideal of reduced norm p.
QuatLattice kernel_ideal(const QuatOrder& O, const RowQ& eps, Int p) {
  MatQ bas = O.lat.basis();
  MatI F(4, 4);
  for (int s = 0; s < 4; ++s) {
    RowQ sol = solve_rational(bas, qmul(O.alg, RowQ(bas.row(s)), eps));
    for (int k = 0; k < 4; ++k) F(s, k) = sol(k).to_int("dual_graph: non-integral map");
  }
  MatI u = preimage_mod(F, p);
  if (u.rows() != 4) throw consistency_error("dual_graph: kernel rank != 4");
  return lattice_from_rows(to_rational(u) * bas);
}

int class_index_of(const QuatAlgebra& B, const ClassSet& cs, const RightIdeal& J,
                   const char* what) {
  for (size_t i = 0; i < cs.classes.size(); ++i)
    if (is_isomorphic(B, J, cs.classes[i].ideal)) return static_cast<int>(i);
  throw consistency_error(std::string(what) + ": ideal class not found");
}

} // namespace

int DualGraph::components() const {
  const int n = 2 * static_cast<int>(vertex_units_a.size());
  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  int comps = n;
  const int h = static_cast<int>(vertex_units_a.size());
  for (const Edge& e : edges) {
    int ra = find(e.a), rb = find(e.b + h);
    if (ra != rb) {
      parent[static_cast<size_t>(ra)] = rb;
      --comps;
    }
  }
  return comps;
}

Int DualGraph::betti() const {
  return Int(static_cast<long long>(edges.size())) -
         Int(2 * static_cast<long long>(vertex_units_a.size())) + Int(components());
}

DualGraph dual_graph(Int delta, Int p, Int level) {
  validate_curve(delta, level, "dual_graph");
  if (!is_prime(p) || !(delta % p).is_zero())
    throw input_error("dual_graph: p must be a prime divisor of the discriminant");
  Int dd = exact_div(delta, p, "dual_graph");

  QuatAlgebra B = build_algebra(prime_divisors(dd));
  QuatOrder Oa = eichler_order(maximal_order(B), level);
  RowQ eps = splitting_idempotent(Oa, p);
  QuatOrder Oe = eichler_order(Oa, p); // the edge order, level*p

  // the second level-`level` order above Oe: right order of the kernel ideal
  QuatLattice J = kernel_ideal(Oa, eps, p);
  QuatLattice JJ = lattice_product(B, lattice_conj(J), J);
  QuatOrder Ob{B, lattice_scale(JJ, Rat(Int(1), ideal_norm(B, J))), level};
  if (!is_order(B, Ob.lat) || discrd(B, Ob.lat) != dd * level)
    throw consistency_error("dual_graph: second endpoint order is wrong");
  if (!(lattice_intersect(Oa.lat, Ob.lat) == Oe.lat))
    throw consistency_error("dual_graph: endpoint orders do not intersect in the edge order");

  ClassSet verts = right_ideal_class_set(Oa);
  ClassSet edges = right_ideal_class_set(Oe);

  DualGraph g;
  g.delta = delta;
  g.p = p;
  g.level = level;
  for (const auto& c : verts.classes) {
    g.vertex_units_a.push_back(c.unit_count);
    g.vertex_units_b.push_back(c.unit_count);
  }
  // conj(J) is a left Ob-, right Oa-ideal; right multiplication by it is a
  // fixed bijection of right Ob-classes onto right Oa-classes, so the second
  // endpoint of the edge class [I], namely [I*Ob], can be labeled by the
  // Oa-class of I*conj(J).
  QuatLattice Qba = lattice_conj(J);
  for (const auto& e : edges.classes) {
    QuatLattice la = lattice_product(B, e.ideal.lat, Oa.lat);
    QuatLattice lb = lattice_product(B, e.ideal.lat, Qba);
    RightIdeal Ja{la, ideal_norm(B, la)};
    RightIdeal Jb{lb, ideal_norm(B, lb)};
    DualGraph::Edge edge;
    edge.a = class_index_of(B, verts, Ja, "dual_graph");
    edge.b = class_index_of(B, verts, Jb, "dual_graph");
    edge.unit_order = e.unit_count;
    g.edges.push_back(edge);
  }
  if (g.betti() != shimura_genus(delta, level))
    throw consistency_error("dual_graph: Betti number disagrees with the curve genus");
  return g;
}

std::string dual_graph_edge_list(const DualGraph& g) {
  std::string s = "# vertices 0.." + std::to_string(g.vertex_units_a.size() - 1) +
                  " side a, " + std::to_string(g.vertex_units_a.size()) + ".." +
                  std::to_string(2 * g.vertex_units_a.size() - 1) + " side b\n";
  const int h = static_cast<int>(g.vertex_units_a.size());
  for (const auto& e : g.edges)
    s += std::to_string(e.a) + " " + std::to_string(e.b + h) + "\n";
  return s;
}

RatioTable ratio_experiment(Int delta, Int level, Int min_absD, Int max_absD, int threads) {
  QuatAlgebra B = build_algebra(prime_divisors(delta));
  QuatOrder O = eichler_order(maximal_order(B), level);
  return ratio_experiment(right_ideal_class_set(O), min_absD, max_absD, threads);
}

RatioTable ratio_experiment(const ClassSet& cs, Int min_absD, Int max_absD, int threads) {
  if (min_absD < Int(3) || max_absD < min_absD || threads < 1)
    throw input_error("ratio_experiment: bad ranges");
  const Int delta = cs.order.alg.delta;
  const Int level = cs.order.level;
  std::vector<TernaryLattice> gross = class_gross_lattices(cs);
  const size_t k = cs.classes.size();

  std::vector<std::vector<std::int64_t>> prim(k);
  {
    std::atomic<int> next{0};
    auto work = [&] {
      for (int i; (i = next.fetch_add(1)) < static_cast<int>(k);)
        prim[static_cast<size_t>(i)] =
            theta_coeffs(gross[static_cast<size_t>(i)], max_absD.to_i64()).prim;
    };
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < std::min<int>(threads, static_cast<int>(k)); ++t)
        pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
  }
  std::vector<std::uint16_t> htab = class_number_table(max_absD.to_i64());

  RatioTable out;
  out.delta = delta;
  out.level = level;
  for (Int a = min_absD; a <= max_absD; a += 1) {
    Int d = -a;
    Int r4 = ((d % Int(4)) + Int(4)) % Int(4);
    if (r4 != Int(0) && r4 != Int(1)) continue;
    if (gcd(factor_discriminant(d).c, delta * level) != Int(1)) continue;
    RatioRow row;
    row.D = d;
    row.hD = Int(static_cast<long long>(htab[static_cast<size_t>(a.to_i64())]));
    if (row.hD < Int(1)) throw consistency_error("ratio_experiment: zero class number");
    for (size_t i = 0; i < k; ++i) {
      Int r(prim[i][static_cast<size_t>(a.to_i64())]);
      row.rstar.push_back(r);
      row.ratio.push_back(Rat(r, row.hD));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::string ratio_csv(const RatioTable& t) {
  size_t k = t.rows.empty() ? 0 : t.rows[0].rstar.size();
  std::string s = "D";
  for (size_t i = 0; i < k; ++i) s += ",r_" + std::to_string(i);
  s += ",h";
  for (size_t i = 0; i < k; ++i) s += ",ratio_" + std::to_string(i);
  s += "\n";
  for (const RatioRow& r : t.rows) {
    s += to_string(r.D);
    for (const Int& v : r.rstar) s += "," + to_string(v);
    s += "," + to_string(r.hD);
    for (const Rat& q : r.ratio) s += "," + to_string(q.num) + "/" + to_string(q.den);
    s += "\n";
  }
  return s;
}

Rat max_ratio_in_window(const RatioTable& t, Int lo, Int hi) {
  bool seen = false;
  Rat best(0);
  for (const RatioRow& r : t.rows) {
    Int a = abs(r.D);
    if (a < lo || a >= hi) continue;
    for (const Rat& q : r.ratio) {
      if (!seen || q > best) best = q;
      seen = true;
    }
  }
  if (!seen) throw input_error("max_ratio_in_window: empty window");
  return best;
}

} // namespace qlat
