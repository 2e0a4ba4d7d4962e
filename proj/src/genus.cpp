#include "qlat/genus.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "qlat/arith.hpp"
#include "qlat/canonical.hpp"
#include "qlat/errors.hpp"
#include "qlat/intlinalg.hpp"

namespace qlat {

Int automorph_count(const TernaryLattice& L) { return canonical_form(MatI(L.gram)).aut_count; }

namespace {

std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw consistency_error("mod_inverse: not invertible");
  return ((t % p) + p) % p;
}

// v gram w^T = B(v, w) for integer coordinate rows.
Int pairing(const Mat3I& g, const RowI& v, const RowI& w) {
  Int s(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += v(i) * g(i, j) * w(j);
  return s;
}

std::vector<Int> key_of(const MatI& canonical_gram) {
  std::vector<Int> key;
  const Eigen::Index n = canonical_gram.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    key.push_back(canonical_gram(k, k));
    for (Eigen::Index t = 0; t < k; ++t) key.push_back(canonical_gram(t, k));
  }
  return key;
}

} // namespace

std::vector<TernaryLattice> p_neighbors(const TernaryLattice& L, Int p) {
  if (!is_prime(p) || p == Int(2)) throw input_error("p_neighbors: need an odd prime");
  Int det = det_bareiss(MatI(L.gram));
  if ((det % p).is_zero()) throw input_error("p_neighbors: p divides the determinant");
  const std::int64_t pp = p.to_i64();

  // Projective representatives: first nonzero coordinate 1.
  std::vector<RowI> points;
  for (std::int64_t y = 0; y < pp; ++y)
    for (std::int64_t z = 0; z < pp; ++z) {
      RowI v(3);
      v << Int(1), Int(y), Int(z);
      points.push_back(v);
    }
  for (std::int64_t z = 0; z < pp; ++z) {
    RowI v(3);
    v << Int(0), Int(1), Int(z);
    points.push_back(v);
  }
  {
    RowI v(3);
    v << Int(0), Int(0), Int(1);
    points.push_back(v);
  }

  std::vector<TernaryLattice> out;
  for (RowI v : points) {
    Int twoq = pairing(L.gram, v, v); // 2Q(v), an even integer
    if (!(twoq % p).is_zero()) continue;
    Int q = exact_div(twoq, Int(2), "p_neighbors: odd pairing");
    if (!(q % (p * p)).is_zero()) {
      // adjust v by a multiple of p e_k so that Q(v) = 0 mod p^2
      int k = -1;
      Int bk(0);
      for (int kk = 0; kk < 3; ++kk) {
        Int b(0);
        for (int i = 0; i < 3; ++i) b += v(i) * L.gram(i, kk);
        if (!(b % p).is_zero()) {
          k = kk;
          bk = b;
          break;
        }
      }
      if (k < 0) throw consistency_error("p_neighbors: isotropic vector in the radical");
      std::int64_t b = ((bk % p).v < 0) ? (bk % p).to_i64() + pp : (bk % p).to_i64();
      Int qp = exact_div(q, p, "p_neighbors: isotropy lost");
      std::int64_t rhs = ((-(qp % p).to_i64()) % pp + pp) % pp;
      std::int64_t lam = (rhs * mod_inverse(b, pp)) % pp;
      v(k) += Int(lam) * p;
      Int check = exact_div(pairing(L.gram, v, v), Int(2), "p_neighbors: odd pairing");
      if (!(check % (p * p)).is_zero())
        throw consistency_error("p_neighbors: lift failed");
    }
    // neighbor = {x : B(x, v) = 0 mod p} + Z v/p
    MatI f(3, 1);
    for (int i = 0; i < 3; ++i) {
      f(i, 0) = Int(0);
      for (int j = 0; j < 3; ++j) f(i, 0) += L.gram(i, j) * v(j);
    }
    MatI k3 = preimage_mod(f, p);
    MatQ rows(4, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) rows(i, j) = Rat(k3(i, j));
    for (int j = 0; j < 3; ++j) rows(3, j) = Rat(v(j), p);
    MatI num;
    Int den;
    to_common_den(rows, num, den);
    MatI h = hnf(num);
    if (h.rows() != 3) throw consistency_error("p_neighbors: neighbor rank != 3");
    MatQ w = to_rational(h, den);
    MatQ gq = w * to_rational(MatI(L.gram)) * w.transpose();
    TernaryLattice nb;
    nb.delta = L.delta;
    nb.level = L.level;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        nb.gram(i, j) = gq(i, j).to_int("p_neighbors: non-integral neighbor Gram");
    if (det_bareiss(MatI(nb.gram)) != det)
      throw consistency_error("p_neighbors: determinant changed");
    out.push_back(std::move(nb));
  }
  return out;
}

int hasse_symbol(const TernaryLattice& L, Int p) {
  MatQ g = to_rational(MatI(L.gram), Int(2)); // the Q-Gram
  Rat d[3];
  for (int k = 0; k < 3; ++k) {
    if (g(k, k) == Rat(0)) throw consistency_error("hasse_symbol: zero pivot");
    d[k] = g(k, k);
    for (int i = k + 1; i < 3; ++i) {
      Rat f = g(i, k) / g(k, k);
      for (int j = k; j < 3; ++j) g(i, j) = g(i, j) - f * g(k, j);
      for (int j = k; j < 3; ++j) g(j, i) = g(j, i) - f * g(j, k);
    }
  }
  Int n[3];
  for (int k = 0; k < 3; ++k) n[k] = d[k].num * d[k].den;
  int c = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) c *= hilbert_symbol(n[i], n[j], p);
  return c;
}

GenusSet genus_enumerate(const TernaryLattice& L) {
  Int det = det_bareiss(MatI(L.gram));
  std::vector<Int> ps;
  for (Int q(3); ps.size() < 2; q += 2)
    if (is_prime(q) && !(det % q).is_zero()) ps.push_back(q);
  return genus_enumerate(L, ps);
}

GenusSet genus_enumerate(const TernaryLattice& L, const std::vector<Int>& primes) {
  GenusSet out;
  out.bilinear_det = det_bareiss(MatI(L.gram));

  std::map<std::vector<Int>, int> seen;
  std::vector<GenusClass> found;
  std::deque<int> queue;
  auto add = [&](const TernaryLattice& cand) {
    CanonicalForm f = canonical_form(MatI(cand.gram));
    std::vector<Int> key = key_of(f.gram);
    if (seen.count(key)) return;
    GenusClass c;
    c.lat = cand;
    c.lat.class_index = static_cast<int>(found.size());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.lat.gram(i, j) = f.gram(i, j);
    c.aut_count = f.aut_count;
    seen.emplace(std::move(key), static_cast<int>(found.size()));
    queue.push_back(static_cast<int>(found.size()));
    found.push_back(std::move(c));
  };
  add(L);
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    TernaryLattice cur = found[static_cast<size_t>(i)].lat;
    for (const Int& p : primes)
      for (const TernaryLattice& nb : p_neighbors(cur, p)) add(nb);
  }

  for (const auto& [key, idx] : seen) out.classes.push_back(found[static_cast<size_t>(idx)]);
  for (size_t i = 0; i < out.classes.size(); ++i)
    out.classes[i].lat.class_index = static_cast<int>(i);

  // local invariants must agree across the genus
  std::vector<Int> checks{Int(2)};
  for (const auto& [p, e] : factor(abs(out.bilinear_det)))
    if (p != Int(2)) checks.push_back(p);
  for (const GenusClass& c : out.classes) {
    if (det_bareiss(MatI(c.lat.gram)) != out.bilinear_det)
      throw consistency_error("genus: determinant mismatch across classes");
    for (const Int& p : checks)
      if (hasse_symbol(c.lat, p) != hasse_symbol(L, p))
        throw consistency_error("genus: Hasse invariant mismatch across classes");
  }
  return out;
}

std::vector<std::vector<int>> spinor_partition(const GenusSet& G, Int p) {
  const int n = static_cast<int>(G.classes.size());
  std::map<std::vector<Int>, int> index;
  for (int i = 0; i < n; ++i) index[key_of(MatI(G.classes[static_cast<size_t>(i)].lat.gram))] = i;

  std::vector<int> parent(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };

  for (int i = 0; i < n; ++i)
    for (const TernaryLattice& nb : p_neighbors(G.classes[static_cast<size_t>(i)].lat, p)) {
      auto it = index.find(canonical_key(MatI(nb.gram)));
      if (it == index.end()) throw consistency_error("spinor_partition: neighbor not in genus");
      unite(i, it->second);
    }

  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : comps) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Rat subset_mass(const GenusSet& G, const std::vector<int>& subset) {
  if (subset.empty()) throw input_error("mass_averaged_rep: empty subset");
  Rat m(0);
  for (int i : subset) {
    if (i < 0 || static_cast<size_t>(i) >= G.classes.size())
      throw input_error("mass_averaged_rep: index out of range");
    m = m + Rat(Int(1), G.classes[static_cast<size_t>(i)].aut_count);
  }
  return m;
}

} // namespace

Rat mass_averaged_rep(const GenusSet& G, const std::vector<int>& subset, Int m, bool primitive) {
  Rat mass = subset_mass(G, subset);
  Rat acc(0);
  for (int i : subset) {
    const GenusClass& c = G.classes[static_cast<size_t>(i)];
    Int r = primitive ? primitive_rep_number(c.lat, m) : rep_number(c.lat, m);
    acc = acc + Rat(r, c.aut_count);
  }
  return acc / mass;
}

std::vector<Rat> mass_averaged_theta(const GenusSet& G, const std::vector<int>& subset,
                                     std::int64_t bound, bool primitive) {
  Rat mass = subset_mass(G, subset);
  std::vector<Rat> acc(static_cast<size_t>(bound) + 1, Rat(0));
  for (int i : subset) {
    const GenusClass& c = G.classes[static_cast<size_t>(i)];
    TernaryTheta t = theta_coeffs(c.lat, bound);
    const auto& col = primitive ? t.prim : t.all;
    for (size_t mm = 0; mm < acc.size(); ++mm)
      acc[mm] = acc[mm] + Rat(Int(col[mm]), c.aut_count);
  }
  for (Rat& v : acc) v = v / mass;
  return acc;
}

} // namespace qlat
