#include "qlat/ideals.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

#include "qlat/arith.hpp"
#include "qlat/canonical.hpp"
#include "qlat/errors.hpp"
#include "qlat/intlinalg.hpp"
#include "qlat/shortvec.hpp"

namespace qlat {

Int ideal_norm(const QuatAlgebra& B, const QuatLattice& I) {
  MatQ g = nrd_gram(B, I);
  Int acc(0);
  for (int i = 0; i < 4; ++i) {
    acc = gcd(acc, g(i, i).to_int("ideal_norm: non-integral nrd"));
    for (int j = i + 1; j < 4; ++j)
      acc = gcd(acc, (g(i, j) * Rat(2)).to_int("ideal_norm: non-integral pairing"));
  }
  if (acc <= Int(0)) throw consistency_error("ideal_norm: degenerate lattice");
  return acc;
}

MatI normalized_even_gram(const QuatAlgebra& B, const QuatLattice& I, Int nr) {
  MatQ g = nrd_gram(B, I);
  MatI e(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      e(i, j) = (g(i, j) * Rat(Int(2), nr)).to_int("normalized_even_gram: norm does not divide");
  return e;
}

namespace {

std::int64_t mod_pos(Int a, std::int64_t p) {
  Int r = a % Int(p);
  return r.v < 0 ? r.to_i64() + p : r.to_i64();
}

} // namespace

std::vector<QuatLattice> neighbors(const QuatOrder& O, const QuatLattice& I, Int p) {
  const QuatAlgebra& B = O.alg;
  if (!is_prime(p)) throw input_error("neighbors: p must be prime");
  if ((B.delta * O.level % p).is_zero())
    throw input_error("neighbors: p divides the reduced discriminant");
  const std::int64_t pp = p.to_i64();

  Int nr = ideal_norm(B, I);
  MatQ bi = I.basis();

  // Right multiplication by the order basis, in coordinates on I: integral
  // because I is a right O-module.
  std::int64_t m[4][4][4];
  for (int g = 0; g < 4; ++g) {
    Mat4Q rg = right_mult_matrix(B, O.lat.element(g));
    for (int i = 0; i < 4; ++i) {
      RowQ target = bi.row(i) * rg;
      RowQ coords = solve_rational(bi, target);
      for (int j = 0; j < 4; ++j)
        m[g][i][j] = mod_pos(coords(j).to_int("neighbors: I is not a right module"), pp);
    }
  }

  std::vector<QuatLattice> out;
  // 2-dimensional subspaces of F_p^4 in reduced row echelon form.
  for (int c1 = 0; c1 < 4; ++c1)
    for (int c2 = c1 + 1; c2 < 4; ++c2) {
      std::vector<std::pair<int, int>> free_pos; // (row, col)
      for (int j = c1 + 1; j < 4; ++j)
        if (j != c2) free_pos.push_back({0, j});
      for (int j = c2 + 1; j < 4; ++j) free_pos.push_back({1, j});
      std::int64_t total = 1;
      for (size_t t = 0; t < free_pos.size(); ++t) total *= pp;
      for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t w[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};
        w[0][c1] = 1;
        w[1][c2] = 1;
        std::int64_t c = code;
        for (auto [r, col] : free_pos) {
          w[r][col] = c % pp;
          c /= pp;
        }
        bool stable = true;
        for (int g = 0; g < 4 && stable; ++g)
          for (int r = 0; r < 2 && stable; ++r) {
            std::int64_t img[4];
            for (int j = 0; j < 4; ++j) {
              std::int64_t s = 0;
              for (int i = 0; i < 4; ++i) s += w[r][i] * m[g][i][j];
              img[j] = s % pp;
            }
            std::int64_t a0 = img[c1], a1 = img[c2];
            for (int j = 0; j < 4; ++j)
              if ((img[j] - a0 * w[0][j] - a1 * w[1][j]) % pp != 0) {
                stable = false;
                break;
              }
          }
        if (!stable) continue;
        MatQ rows(6, 4);
        for (int r = 0; r < 2; ++r) {
          RowQ v = RowQ::Zero(4);
          for (int i = 0; i < 4; ++i) v += Rat(Int(w[r][i])) * bi.row(i);
          rows.row(r) = v;
        }
        for (int i = 0; i < 4; ++i) rows.row(2 + i) = Rat(p) * bi.row(i);
        QuatLattice j = lattice_from_rows(rows);
        if (ideal_norm(B, j) != p * nr)
          throw consistency_error("neighbors: neighbor norm is not p*nr");
        out.push_back(std::move(j));
      }
    }
  if (Int(static_cast<long long>(out.size())) != p + Int(1))
    throw consistency_error("neighbors: expected p+1 stable subspaces");
  return out;
}

RightIdeal reduce_ideal(const QuatOrder& O, const QuatLattice& I) {
  const QuatAlgebra& B = O.alg;
  Int nr = ideal_norm(B, I);
  MatQ g = nrd_gram(B, I);
  // Minkowski: the minimum of nrd on I is at most nr * sqrt(disc/2).
  Int half = ceil_div(B.delta * O.level, Int(2));
  Int s = isqrt(half);
  if (s * s < half) s += 1;
  Rat bound(nr * s);
  bool have = false;
  Rat best_val;
  RowI best_x;
  enumerate_up_to(g, bound, [&](const RowI& x, const Rat& val) {
    if (!have || val < best_val) {
      have = true;
      best_val = val;
      best_x = x;
    }
    return true;
  });
  if (!have) throw consistency_error("reduce_ideal: no vector under the Minkowski bound");

  MatQ bi = I.basis();
  RowQ x = RowQ::Zero(4);
  for (int i = 0; i < 4; ++i) x += Rat(best_x(i)) * bi.row(i);
  RowQ xbar = qconj(x);
  MatQ rows(4, 4);
  for (int i = 0; i < 4; ++i) rows.row(i) = qmul(B, xbar, bi.row(i)) / Rat(nr);
  RightIdeal out;
  out.lat = lattice_from_rows(rows);
  out.nr = (best_val / Rat(nr)).to_int("reduce_ideal: norm not divisible");
  if (ideal_norm(B, out.lat) != out.nr)
    throw consistency_error("reduce_ideal: norm mismatch after reduction");
  return out;
}

QuatOrder left_order(const QuatOrder& O, const RightIdeal& I) {
  const QuatAlgebra& B = O.alg;
  QuatLattice ol = lattice_scale(lattice_product(B, I.lat, lattice_conj(I.lat)), Rat(Int(1), I.nr));
  if (!is_order(B, ol)) throw consistency_error("left_order: not an order");
  if (discrd(B, ol) != B.delta * O.level)
    throw consistency_error("left_order: wrong reduced discriminant");
  QuatOrder out;
  out.alg = B;
  out.lat = ol;
  out.level = O.level;
  return out;
}

bool is_isomorphic(const QuatAlgebra& B, const RightIdeal& I, const RightIdeal& J) {
  QuatLattice m = lattice_product(B, J.lat, lattice_conj(I.lat));
  Rat target(I.nr * J.nr);
  MatQ g = nrd_gram(B, m);
  bool found = false;
  enumerate_up_to(g, target, [&](const RowI&, const Rat& val) {
    if (val < target) throw consistency_error("is_isomorphic: norm below nr(I)nr(J)");
    found = true;
    return false;
  });
  return found;
}

Rat eichler_mass(Int delta, Int level) {
  Rat m(Int(1), Int(12));
  for (const auto& [p, e] : factor(delta)) {
    if (e != 1) throw input_error("eichler_mass: delta must be squarefree");
    m = m * Rat(p - Int(1));
  }
  for (const auto& [p, e] : factor(level)) {
    if (e != 1) throw input_error("eichler_mass: level must be squarefree");
    m = m * Rat(p + Int(1));
  }
  return m;
}

namespace {

IdealClass make_class(const QuatOrder& O, RightIdeal ideal) {
  IdealClass c;
  MatI gram = normalized_even_gram(O.alg, ideal.lat, ideal.nr);
  CanonicalForm f = canonical_form(gram);
  c.canonical_gram = f.gram;
  const Eigen::Index n = f.gram.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    c.key.push_back(f.gram(k, k));
    for (Eigen::Index t = 0; t < k; ++t) c.key.push_back(f.gram(t, k));
  }
  QuatOrder ol = left_order(O, ideal);
  c.unit_count = unit_order(O.alg, ol.lat);
  c.ideal = std::move(ideal);
  return c;
}

// One BFS sweep at prime p starting from the classes already found.
// Returns when the accumulated mass reaches the target or the walk closes.
void walk(const QuatOrder& O, Int p, std::vector<IdealClass>& classes, Rat& acc,
          const Rat& target) {
  std::deque<size_t> queue;
  for (size_t i = 0; i < classes.size(); ++i) queue.push_back(i);
  while (!queue.empty() && acc != target) {
    size_t at = queue.front();
    queue.pop_front();
    QuatLattice base = classes[at].ideal.lat; // copy: classes may reallocate
    for (QuatLattice& nb : neighbors(O, base, p)) {
      RightIdeal red = reduce_ideal(O, nb);
      MatI gram = normalized_even_gram(O.alg, red.lat, red.nr);
      std::vector<Int> key = canonical_key(gram);
      bool known = false;
      for (const IdealClass& c : classes)
        if (c.key == key && is_isomorphic(O.alg, c.ideal, red)) {
          known = true;
          break;
        }
      if (known) continue;
      classes.push_back(make_class(O, std::move(red)));
      acc = acc + Rat(Int(1), classes.back().unit_count);
      if (acc > target) throw consistency_error("class set: mass exceeds the formula");
      queue.push_back(classes.size() - 1);
      if (acc == target) return;
    }
  }
}

} // namespace

ClassSet right_ideal_class_set(const QuatOrder& O) {
  const QuatAlgebra& B = O.alg;
  Int d = B.delta * O.level;
  Rat target = eichler_mass(B.delta, O.level);

  std::vector<Int> good;
  for (Int q(2); good.size() < 2; q += 1)
    if (is_prime(q) && !(d % q).is_zero()) good.push_back(q);

  ClassSet out;
  out.order = O;
  out.neighbor_prime = good[0];

  RightIdeal unit;
  unit.lat = O.lat;
  unit.nr = ideal_norm(B, O.lat);
  if (unit.nr != Int(1)) throw consistency_error("class set: order has norm != 1");
  out.classes.push_back(make_class(O, std::move(unit)));
  Rat acc(Int(1), out.classes.back().unit_count);

  walk(O, good[0], out.classes, acc, target);
  if (acc != target) walk(O, good[1], out.classes, acc, target);
  if (acc != target) throw consistency_error("class set: mass certificate failed");
  out.mass = acc;

  std::vector<size_t> idx(out.classes.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    if (out.classes[a].key != out.classes[b].key) return out.classes[a].key < out.classes[b].key;
    return a < b;
  });
  std::vector<IdealClass> sorted;
  sorted.reserve(idx.size());
  for (size_t i : idx) sorted.push_back(std::move(out.classes[i]));
  out.classes = std::move(sorted);
  return out;
}

} // namespace qlat
