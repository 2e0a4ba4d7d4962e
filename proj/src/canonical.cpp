#include "qlat/canonical.hpp"

#include <algorithm>
#include <cstddef>

#include "qlat/errors.hpp"
#include "qlat/intlinalg.hpp"
#include "qlat/shortvec.hpp"

namespace qlat {

namespace {

// b_i <- b_i - mu b_j on the Gram side: row i and column i.
void row_op(MatI& g, Eigen::Index i, Eigen::Index j, Int mu) {
  const Eigen::Index n = g.rows();
  for (Eigen::Index k = 0; k < n; ++k) g(i, k) -= mu * g(j, k);
  for (Eigen::Index k = 0; k < n; ++k) g(k, i) -= mu * g(k, j);
}

void basis_swap(MatI& g, Eigen::Index i, Eigen::Index j) {
  g.row(i).swap(g.row(j));
  g.col(i).swap(g.col(j));
}

} // namespace

MatI greedy_reduce(MatI g) {
  const Eigen::Index n = g.rows();
  for (int iter = 0; iter < 64; ++iter) {
    bool changed = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      Eigen::Index best = i;
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (g(j, j) < g(best, best)) best = j;
      if (best != i) {
        basis_swap(g, i, best);
        changed = true;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        // nearest integer to G_ij / G_jj
        Int mu = floor_div(Int(2) * g(i, j) + g(j, j), Int(2) * g(j, j));
        if (!mu.is_zero()) {
          row_op(g, i, j, mu);
          changed = true;
        }
      }
    if (!changed) break;
  }
  return g;
}

namespace {

struct Cand {
  RowI x;
  Int val2; // x A x^T = 2Q(x)
};

// Tuple DFS over short candidate vectors.  flat holds the flattened Gram
// entries of the partial tuple in the order (A11; A22, A12; A33, ...).
// In minimizing mode best is improved at unimodular leaves; in counting
// mode best is frozen and only exactly-equal paths are followed.
struct TupleSearch {
  const MatI* a = nullptr;
  Eigen::Index n = 0;
  std::vector<Cand> cands;
  std::vector<Int> best;
  std::vector<Int> flat;
  MatI coords;
  bool counting = false;
  Int aut_count{0};

  void run() {
    flat.clear();
    flat.reserve(best.size());
    recurse(0);
  }

  void recurse(Eigen::Index k) {
    // Fresh prefix comparison: best may have shrunk since the caller
    // pushed these entries.
    int cmp = 0;
    for (std::size_t t = 0; t < flat.size(); ++t) {
      if (flat[t] != best[t]) {
        cmp = flat[t] < best[t] ? -1 : 1;
        break;
      }
    }
    if (cmp > 0) return;
    if (counting && cmp != 0) return;
    if (k == n) {
      if (abs(det_bareiss(coords)) != Int(1)) return;
      if (counting)
        aut_count += 1;
      else if (cmp < 0)
        best = flat;
      return;
    }
    const bool tight = (cmp == 0);
    const std::size_t base = flat.size();
    for (const Cand& c : cands) {
      if (tight && c.val2 > best[base]) break; // cands sorted by val2
      flat.push_back(c.val2);
      for (Eigen::Index t = 0; t < k; ++t)
        flat.push_back((coords.row(t) * (*a) * c.x.transpose())(0, 0));
      coords.row(k) = c.x;
      MatI top(k + 1, n);
      for (Eigen::Index i = 0; i <= k; ++i) top.row(i) = coords.row(i);
      if (hnf(top).rows() == k + 1) recurse(k + 1);
      flat.resize(base);
    }
  }
};

std::vector<Int> flatten(const MatI& g) {
  std::vector<Int> out;
  const Eigen::Index n = g.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    out.push_back(g(k, k));
    for (Eigen::Index t = 0; t < k; ++t) out.push_back(g(t, k));
  }
  return out;
}

} // namespace

CanonicalForm canonical_form(const MatI& even_gram) {
  const Eigen::Index n = even_gram.rows();
  if (n < 1 || n > 4 || n != even_gram.cols())
    throw input_error("canonical_form: need a square Gram of rank 1..4");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!even_gram(i, i).is_even())
      throw input_error("canonical_form: diagonal of an even Gram must be even");

  MatI red = greedy_reduce(even_gram);
  Int bound2 = red(0, 0);
  for (Eigen::Index i = 1; i < n; ++i)
    if (red(i, i) > bound2) bound2 = red(i, i);
  if (bound2 <= Int(0)) throw consistency_error("canonical_form: Gram not positive definite");

  TupleSearch s;
  s.a = &red;
  s.n = n;
  s.coords = MatI::Zero(n, n);
  s.best = flatten(red); // the reduced basis itself, so pruning starts hot
  MatQ qgram = to_rational(red, Int(2)); // Q-valued Gram: Q(x) = x qgram x^T
  enumerate_up_to(qgram, Rat(bound2, Int(2)), [&](const RowI& x, const Rat& val) {
    Cand c;
    c.x = x;
    c.val2 = (val * Rat(2)).to_int("canonical_form: non-integral Gram value");
    s.cands.push_back(c);
    c.x = -x;
    s.cands.push_back(std::move(c));
    return true;
  });
  std::sort(s.cands.begin(), s.cands.end(), [](const Cand& p, const Cand& q) {
    if (p.val2 != q.val2) return p.val2 < q.val2;
    for (Eigen::Index j = 0; j < p.x.cols(); ++j)
      if (p.x(j) != q.x(j)) return p.x(j) < q.x(j);
    return false;
  });

  s.run(); // minimize
  s.counting = true;
  s.run(); // count tuples achieving the minimum
  if (s.aut_count <= Int(0)) throw consistency_error("canonical_form: lost the minimal basis");

  CanonicalForm out;
  out.gram = MatI(n, n);
  std::size_t idx = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    out.gram(k, k) = s.best[idx++];
    for (Eigen::Index t = 0; t < k; ++t) {
      out.gram(t, k) = s.best[idx];
      out.gram(k, t) = s.best[idx];
      ++idx;
    }
  }
  out.aut_count = s.aut_count;
  return out;
}

std::vector<Int> canonical_key(const MatI& even_gram) {
  return flatten(canonical_form(even_gram).gram);
}

} // namespace qlat
