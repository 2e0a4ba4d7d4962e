#include "qlat/intlinalg.hpp"

#include "qlat/errors.hpp"

namespace qlat {

namespace {

void row_axpy(MatI& a, Eigen::Index dst, Eigen::Index src, Int q) {
  if (q.is_zero()) return;
  for (Eigen::Index j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
}

void row_negate(MatI& a, Eigen::Index i) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = -a(i, j);
}

// Shared HNF core; u == nullptr skips transform tracking.
MatI hnf_core(MatI a, MatI* u) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  if (u) *u = MatI::Identity(rows, rows);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    while (true) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = r; i < rows; ++i)
        if (!a(i, c).is_zero() && (piv < 0 || abs(a(i, c)) < abs(a(piv, c)))) piv = i;
      if (piv < 0) break;
      if (piv != r) {
        a.row(piv).swap(a.row(r));
        if (u) u->row(piv).swap(u->row(r));
      }
      bool clean = true;
      for (Eigen::Index i = r + 1; i < rows; ++i) {
        if (a(i, c).is_zero()) continue;
        Int q = a(i, c) / a(r, c);
        row_axpy(a, i, r, q);
        if (u) row_axpy(*u, i, r, q);
        if (!a(i, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    if (r < rows && !a(r, c).is_zero()) {
      if (a(r, c).v < 0) {
        row_negate(a, r);
        if (u) row_negate(*u, r);
      }
      for (Eigen::Index i = 0; i < r; ++i) {
        Int q = floor_div(a(i, c), a(r, c));
        row_axpy(a, i, r, q);
        if (u) row_axpy(*u, i, r, q);
      }
      ++r;
    }
  }
  // move the transform rows for zero rows to the bottom already done by
  // construction; report the nonzero block.
  if (u) return a; // caller slices; keep row count aligned with u
  return MatI(a.topRows(r));
}

} // namespace

MatI hnf(MatI a) { return hnf_core(std::move(a), nullptr); }

MatI hnf_with_transform(MatI a, MatI& u_out) { return hnf_core(std::move(a), &u_out); }

namespace {
bool zero_row(const MatI& m, Eigen::Index i) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!m(i, j).is_zero()) return false;
  return true;
}
} // namespace

MatI kernel(const MatI& a) {
  MatI u;
  MatI h = hnf_with_transform(a, u);
  Eigen::Index nz = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (zero_row(h, i)) ++nz;
  MatI k(nz, a.rows());
  Eigen::Index t = 0;
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (zero_row(h, i)) k.row(t++) = u.row(i);
  return hnf(std::move(k));
}

Int det_bareiss(MatI a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw input_error("det_bareiss: matrix not square");
  if (n == 0) return Int(1);
  Int sign = 1, prev = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      Eigen::Index piv = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!a(i, k).is_zero()) { piv = i; break; }
      if (piv < 0) return Int(0);
      a.row(piv).swap(a.row(k));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev, "det_bareiss");
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rat det_rational(MatQ a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) throw input_error("det_rational: matrix not square");
  Rat det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (!a(i, k).is_zero()) { piv = i; break; }
    if (piv < 0) return Rat(0);
    if (piv != k) {
      a.row(piv).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      Rat f = a(i, k) / a(k, k);
      if (f.is_zero()) continue;
      for (Eigen::Index j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

MatI preimage_mod(const MatI& f, Int q) {
  const Eigen::Index n = f.rows(), m = f.cols();
  MatI stacked(n + m, m);
  stacked.topRows(n) = f;
  stacked.bottomRows(m) = MatI::Identity(m, m) * q;
  MatI k = kernel(stacked);
  MatI x(k.rows(), n);
  for (Eigen::Index i = 0; i < k.rows(); ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = k(i, j);
  return hnf(std::move(x));
}

std::optional<RowI> solve_in_span(const MatI& basis, const RowI& v) {
  MatI u;
  MatI h = hnf_with_transform(basis, u);
  RowI rem = v;
  RowI coeff = RowI::Zero(basis.rows());
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < h.cols() && row < h.rows(); ++c) {
    if (h(row, c).is_zero()) continue;
    Int q = rem(c) / h(row, c);
    if (!(rem(c) % h(row, c)).is_zero()) return std::nullopt;
    for (Eigen::Index j = 0; j < h.cols(); ++j) rem(j) -= q * h(row, j);
    coeff(row) = q;
    ++row;
  }
  for (Eigen::Index j = 0; j < rem.cols(); ++j)
    if (!rem(j).is_zero()) return std::nullopt;
  RowI x = RowI::Zero(basis.rows());
  for (Eigen::Index t = 0; t < basis.rows(); ++t)
    for (Eigen::Index s = 0; s < basis.rows(); ++s) x(s) += coeff(t) * u(t, s);
  return x;
}

RowQ solve_rational(const MatQ& basis, const RowQ& v) {
  // Solve x * basis = v by transposed Gaussian elimination.
  const Eigen::Index n = basis.rows();
  if (n != basis.cols()) throw input_error("solve_rational: basis not square");
  MatQ a(n, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = basis(j, i); // transpose
    a(i, n) = v(i);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (!a(i, k).is_zero()) { piv = i; break; }
    if (piv < 0) throw consistency_error("solve_rational: singular basis");
    if (piv != k) a.row(piv).swap(a.row(k));
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      Rat f = a(i, k) / a(k, k);
      for (Eigen::Index j = k; j <= n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  RowQ x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = a(i, n) / a(i, i);
  return x;
}

bool in_span(const MatI& basis, const RowI& v) { return solve_in_span(basis, v).has_value(); }

void to_common_den(const MatQ& a, MatI& num, Int& den) {
  den = 1;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) den = lcm(den, a(i, j).den);
  num.resize(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      num(i, j) = a(i, j).num * (den / a(i, j).den);
}

} // namespace qlat
