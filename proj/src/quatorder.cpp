#include "qlat/quatorder.hpp"

#include <optional>

#include "qlat/errors.hpp"
#include "qlat/shortvec.hpp"

namespace qlat {

MatQ QuatLattice::basis() const {
  MatQ b(num.rows(), num.cols());
  for (Eigen::Index i = 0; i < num.rows(); ++i)
    for (Eigen::Index j = 0; j < num.cols(); ++j) b(i, j) = Rat(num(i, j), den);
  return b;
}

RowQ QuatLattice::element(Eigen::Index i) const {
  RowQ r(num.cols());
  for (Eigen::Index j = 0; j < num.cols(); ++j) r(j) = Rat(num(i, j), den);
  return r;
}

QuatLattice lattice_from_rows(const MatQ& rows) {
  MatI m;
  Int den;
  to_common_den(rows, m, den);
  MatI h = hnf(std::move(m));
  if (h.rows() != 4) throw consistency_error("lattice_from_rows: rank != 4");
  Int g = den;
  for (Eigen::Index i = 0; i < h.rows() && g > Int(1); ++i)
    for (Eigen::Index j = 0; j < h.cols() && g > Int(1); ++j) g = gcd(g, h(i, j));
  if (g > Int(1)) {
    for (Eigen::Index i = 0; i < h.rows(); ++i)
      for (Eigen::Index j = 0; j < h.cols(); ++j) h(i, j) /= g;
    den /= g;
  }
  return {std::move(h), den};
}

bool lattice_contains(const QuatLattice& L, const RowQ& x) {
  RowI v(4);
  for (int j = 0; j < 4; ++j) {
    Rat t = x(j) * Rat(L.den);
    if (!t.is_integer()) return false;
    v(j) = t.num;
  }
  return in_span(L.num, v);
}

QuatLattice lattice_sum(const QuatLattice& a, const QuatLattice& b) {
  MatQ rows(8, 4);
  rows.topRows(4) = a.basis();
  rows.bottomRows(4) = b.basis();
  return lattice_from_rows(rows);
}

QuatLattice lattice_intersect(const QuatLattice& a, const QuatLattice& b) {
  Int d = lcm(a.den, b.den);
  MatI a1 = a.num * (d / a.den);
  MatI a2 = b.num * (d / b.den);
  MatI stacked(8, 4);
  stacked.topRows(4) = a1;
  stacked.bottomRows(4) = a2;
  MatI k = kernel(stacked); // rows (u, v) with u*a1 + v*a2 = 0
  if (k.rows() != 4) throw consistency_error("lattice_intersect: unexpected kernel rank");
  MatI u(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) u(i, j) = k(i, j);
  MatI prod = u * a1;
  MatQ rows(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) rows(i, j) = Rat(prod(i, j), d);
  return lattice_from_rows(rows);
}

QuatLattice lattice_product(const QuatAlgebra& B, const QuatLattice& a, const QuatLattice& b) {
  MatQ rows(16, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows.row(4 * i + j) = qmul(B, a.element(i), b.element(j));
  return lattice_from_rows(rows);
}

QuatLattice lattice_conj(const QuatLattice& a) {
  MatQ rows(4, 4);
  for (int i = 0; i < 4; ++i) rows.row(i) = qconj(a.element(i));
  return lattice_from_rows(rows);
}

QuatLattice lattice_scale(const QuatLattice& a, const Rat& s) {
  if (s.is_zero()) throw input_error("lattice_scale: zero scale");
  MatQ rows = a.basis();
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) *= s;
  return lattice_from_rows(rows);
}

Rat lattice_index(const QuatLattice& sup, const QuatLattice& sub) {
  Rat dsub = Rat(abs(det_bareiss(sub.num)), pow_int(sub.den, 4));
  Rat dsup = Rat(abs(det_bareiss(sup.num)), pow_int(sup.den, 4));
  return dsub / dsup;
}

MatQ nrd_gram(const QuatAlgebra& B, const QuatLattice& L) {
  MatQ g(4, 4);
  MatQ bas = L.basis();
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Rat t = qtrd(qmul(B, bas.row(i), qconj(bas.row(j)))) / Rat(2);
      g(i, j) = t;
      g(j, i) = t;
    }
  return g;
}

Int discrd(const QuatAlgebra& B, const QuatLattice& L) {
  MatQ g = nrd_gram(B, L);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) g(i, j) *= Rat(2); // trace-form Gram
  Rat det = det_rational(g);
  Int d = det.to_int("discrd: non-integral trace Gram determinant");
  d = abs(d);
  Int s = isqrt(d);
  if (s * s != d) throw consistency_error("discrd: determinant not a perfect square");
  return s;
}

bool is_order(const QuatAlgebra& B, const QuatLattice& L) {
  if (!lattice_contains(L, qone())) return false;
  for (int i = 0; i < 4; ++i) {
    if (!qtrd(L.element(i)).is_integer()) return false;
    if (!qnrd(B, L.element(i)).is_integer()) return false;
    for (int j = 0; j < 4; ++j)
      if (!lattice_contains(L, qmul(B, L.element(i), L.element(j)))) return false;
  }
  return true;
}

QuatOrder standard_order(const QuatAlgebra& B) {
  QuatLattice l{MatI::Identity(4, 4), Int(1)};
  return {B, std::move(l), Int(1)};
}

namespace {

// Close L + Z*y under multiplication; nullopt if it fails to stabilize
// quickly (non-integral candidate).
std::optional<QuatLattice> ring_closure(const QuatAlgebra& B, const QuatLattice& L,
                                        const RowQ& y) {
  MatQ rows(5, 4);
  rows.topRows(4) = L.basis();
  rows.row(4) = y;
  QuatLattice cur = lattice_from_rows(rows);
  for (int iter = 0; iter < 8; ++iter) {
    MatQ prod(20, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) prod.row(4 * i + j) = qmul(B, cur.element(i), cur.element(j));
    prod.bottomRows(4) = cur.basis();
    QuatLattice next = lattice_from_rows(prod);
    if (next == cur) return cur;
    cur = next;
  }
  return std::nullopt;
}

QuatLattice enlarge_at(const QuatAlgebra& B, const QuatLattice& L, Int q, Int cur_disc) {
  MatQ bas = L.basis();
  std::int64_t qq = q.to_i64();
  std::int64_t total = qq * qq * qq * qq;
  for (std::int64_t code = 1; code < total; ++code) {
    std::int64_t c = code;
    RowQ y = RowQ::Zero(4);
    for (int i = 0; i < 4; ++i) {
      std::int64_t vi = c % qq;
      c /= qq;
      if (vi)
        for (int j = 0; j < 4; ++j) y(j) += Rat(Int(vi)) * bas(i, j);
    }
    for (int j = 0; j < 4; ++j) y(j) /= Rat(q);
    if (!qtrd(y).is_integer() || !qnrd(B, y).is_integer()) continue;
    if (lattice_contains(L, y)) continue;
    auto closed = ring_closure(B, L, y);
    if (!closed) continue;
    if (!is_order(B, *closed)) continue;
    Int d = discrd(B, *closed);
    if (d < cur_disc && (cur_disc % d).is_zero()) return *closed;
  }
  throw consistency_error("maximal_order: no enlargement found at q=" + to_string(q));
}

} // namespace

QuatOrder maximal_order(const QuatAlgebra& B) {
  QuatOrder O = standard_order(B);
  while (true) {
    Int d = discrd(B, O.lat);
    if (d == B.delta) break;
    Int excess = exact_div(d, B.delta, "maximal_order: discriminant not divisible by delta");
    Int q = factor(excess)[0].first;
    O.lat = enlarge_at(B, O.lat, q, d);
  }
  return O;
}

namespace {

// Integer structure constants: b_i * b_j = sum_k c[i][j][k] b_k.
using StructConsts = std::array<std::array<std::array<Int, 4>, 4>, 4>;

StructConsts structure_constants(const QuatAlgebra& B, const QuatLattice& L) {
  StructConsts c{};
  MatQ bas = L.basis();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      RowQ p = qmul(B, bas.row(i), bas.row(j));
      RowQ sol = solve_rational(bas, p);
      for (int k = 0; k < 4; ++k)
        c[i][j][k] = sol(k).to_int("structure_constants: non-integral (not an order?)");
    }
  return c;
}

} // namespace

RowQ splitting_idempotent(const QuatOrder& O, Int p) {
  if (!is_prime(p)) throw input_error("splitting_idempotent: p not prime");
  StructConsts c = structure_constants(O.alg, O.lat);
  std::int64_t pp = p.to_i64();
  std::array<std::int64_t, 4> tr{};
  for (int i = 0; i < 4; ++i) {
    Int t = qtrd(O.lat.element(i)).to_int("splitting_idempotent");
    tr[i] = (((t % p) + p) % p).to_i64();
  }
  std::array<std::array<std::array<std::int64_t, 4>, 4>, 4> cm{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        cm[i][j][k] = (((c[i][j][k] % p) + p) % p).to_i64();
  std::array<std::int64_t, 4> v{};
  std::int64_t total = pp * pp * pp * pp;
  for (std::int64_t code = 1; code < total; ++code) {
    std::int64_t cc = code;
    for (int i = 0; i < 4; ++i) { v[i] = cc % pp; cc /= pp; }
    std::int64_t trace = 0;
    for (int i = 0; i < 4; ++i) trace = (trace + v[i] * tr[i]) % pp;
    if (trace != 1) continue;
    bool idem = true;
    for (int k = 0; k < 4 && idem; ++k) {
      std::int64_t s = 0;
      for (int i = 0; i < 4; ++i) {
        if (!v[i]) continue;
        for (int j = 0; j < 4; ++j) {
          if (!v[j]) continue;
          s = (s + v[i] * v[j] % pp * cm[i][j][k]) % pp;
        }
      }
      if (s != v[k] % pp) idem = false;
    }
    if (!idem) continue;
    RowQ y = RowQ::Zero(4);
    for (int i = 0; i < 4; ++i)
      if (v[i]) y += Rat(Int(v[i])) * O.lat.element(i);
    return y;
  }
  throw consistency_error("splitting_idempotent: none found (p not split in O?)");
}

namespace {

// Sublattice {x in O : f(x) in p*O} for the linear map given in basis
// coordinates by the integer matrix F (row s = coords of f(b_s)).
QuatLattice coords_preimage(const QuatOrder& O, const MatI& F, Int p) {
  MatI u = preimage_mod(F, p);
  if (u.rows() != 4) throw consistency_error("coords_preimage: rank != 4");
  MatQ rows = MatQ(4, 4);
  MatQ bas = O.lat.basis();
  for (int i = 0; i < 4; ++i) {
    RowQ r = RowQ::Zero(4);
    for (int j = 0; j < 4; ++j)
      if (!u(i, j).is_zero()) r += Rat(u(i, j)) * RowQ(bas.row(j));
    rows.row(i) = r;
  }
  return lattice_from_rows(rows);
}

// Coordinates of f applied to each basis element, as integer matrix.
MatI map_matrix(const QuatOrder& O, const std::function<RowQ(const RowQ&)>& f) {
  MatQ bas = O.lat.basis();
  MatI F(4, 4);
  for (int s = 0; s < 4; ++s) {
    RowQ sol = solve_rational(bas, f(bas.row(s)));
    for (int k = 0; k < 4; ++k) F(s, k) = sol(k).to_int("map_matrix: non-integral");
  }
  return F;
}

} // namespace

QuatOrder eichler_order(const QuatOrder& O, Int N) {
  if (N < Int(1)) throw input_error("eichler_order: level must be positive");
  if (!is_squarefree(N) && N != Int(1)) throw input_error("eichler_order: level not squarefree");
  if (gcd(N, O.alg.delta) != Int(1)) throw input_error("eichler_order: level not coprime to delta");
  QuatOrder E = O;
  if (N == Int(1)) return E;
  for (Int p : prime_divisors(N)) {
    RowQ eps = splitting_idempotent(E, p);
    RowQ one = qone();
    MatI F = map_matrix(E, [&](const RowQ& x) {
      return qmul(E.alg, qmul(E.alg, one - eps, x), eps);
    });
    QuatLattice cut = coords_preimage(E, F, p);
    Int want = discrd(E.alg, E.lat) * p;
    E.lat = cut;
    E.level *= p;
    if (discrd(E.alg, E.lat) != want)
      throw consistency_error("eichler_order: discriminant mismatch after cut");
  }
  return E;
}

QuatOrder other_maximal_above(const QuatOrder& O, Int p, const RowQ& eps) {
  // J = {x in O : x*eps in pO} + pO, a left O-ideal of norm p.
  MatI F = map_matrix(O, [&](const RowQ& x) { return qmul(O.alg, x, eps); });
  QuatLattice J = coords_preimage(O, F, p);
  // O2 = right order of J = (1/nr(J)) * conj(J) * J.
  QuatLattice JJ = lattice_product(O.alg, lattice_conj(J), J);
  MatQ g = nrd_gram(O.alg, J);
  Int nr = 0;
  for (int i = 0; i < 4; ++i) nr = gcd(nr, g(i, i).to_int("other_maximal_above: nrd"));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      Rat t = g(i, j) * Rat(2);
      nr = gcd(nr, t.to_int("other_maximal_above: bilinear"));
    }
  QuatOrder O2{O.alg, lattice_scale(JJ, Rat(1, nr)), Int(1)};
  if (discrd(O2.alg, O2.lat) != O.alg.delta)
    throw consistency_error("other_maximal_above: result not maximal");
  if (!is_order(O2.alg, O2.lat))
    throw consistency_error("other_maximal_above: result not an order");
  return O2;
}

Int unit_order(const QuatAlgebra& B, const QuatLattice& L) {
  MatQ g = nrd_gram(B, L);
  Int count = 0;
  enumerate_up_to(g, Rat(1), [&](const RowI&, const Rat& val) {
    if (val == Rat(1)) count += 1;
    return true;
  });
  return count;
}

} // namespace qlat
