#include "qlat/shortvec.hpp"

#include <numeric>

#include "qlat/errors.hpp"

namespace qlat {

RatCholesky cholesky_rat(const MatQ& gram) {
  const Eigen::Index n = gram.rows();
  if (n != gram.cols()) throw input_error("cholesky_rat: not square");
  MatQ a = gram;
  RatCholesky ch;
  ch.d.resize(static_cast<size_t>(n));
  ch.r = MatQ::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i, i).sign() <= 0) throw consistency_error("cholesky_rat: form not positive definite");
    ch.d[static_cast<size_t>(i)] = a(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) ch.r(i, j) = a(i, j) / a(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j)
      for (Eigen::Index k = j; k < n; ++k)
        a(j, k) -= ch.d[static_cast<size_t>(i)] * ch.r(i, j) * ch.r(i, k);
  }
  return ch;
}

namespace {

// floor(q + sqrt(r)) for rationals q, r >= 0.
Int floor_plus_sqrt(const Rat& q, const Rat& r) {
  Int m = floor_rat(q) + floor_sqrt(r);
  auto le = [&](Int mm) { // mm <= q + sqrt(r) ?
    Rat t = Rat(mm) - q;
    if (t.sign() <= 0) return true;
    return t * t <= r;
  };
  while (le(m + 1)) m += 1;
  while (!le(m)) m -= 1;
  return m;
}

struct EnumCtx {
  const RatCholesky* ch;
  const ShortVecFn* fn;
  Eigen::Index n;
  bool fold_signs;
  RowI x;
  std::vector<Rat> center; // enumeration center (zeros when folded)
  bool aborted = false;

  // offsets(i) = sum_{j>i} r(i,j) * (x_j - center_j), maintained per level.
  bool recurse(Eigen::Index i, const Rat& budget, const Rat& used) {
    if (i < 0) {
      if (fold_signs) {
        bool all_zero = true;
        for (Eigen::Index j = 0; j < n; ++j)
          if (!x(j).is_zero()) { all_zero = false; break; }
        if (all_zero) return true;
      }
      return (*fn)(x, used);
    }
    size_t iu = static_cast<size_t>(i);
    Rat s(0);
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!(x(j) == Int(0) && center[static_cast<size_t>(j)].is_zero()))
        s += ch->r(i, j) * (Rat(x(j)) - center[static_cast<size_t>(j)]);
    // d_i * (x_i - c_i + s)^2 <= budget
    Rat rad = budget / ch->d[iu];
    Rat mid = center[iu] - s;
    Int hi = floor_plus_sqrt(mid, rad);
    Int lo = -floor_plus_sqrt(-mid, rad);
    bool top_zero = true;
    if (fold_signs) {
      for (Eigen::Index j = i + 1; j < n; ++j)
        if (!x(j).is_zero()) { top_zero = false; break; }
      if (top_zero && lo < Int(0)) lo = 0;
    }
    for (Int v = lo; v <= hi; v += 1) {
      x(i) = v;
      Rat t = Rat(v) - mid;
      Rat term = ch->d[iu] * t * t;
      if (term > budget) continue; // guards endpoint rounding
      if (!recurse(i - 1, budget - term, used + term)) return false;
    }
    x(i) = 0;
    return true;
  }
};

bool run_enum(const MatQ& gram, const RowQ* center, const Rat& bound, const ShortVecFn& fn,
              bool fold) {
  RatCholesky ch = cholesky_rat(gram);
  EnumCtx ctx;
  ctx.ch = &ch;
  ctx.fn = &fn;
  ctx.n = gram.rows();
  ctx.fold_signs = fold;
  ctx.x = RowI::Zero(ctx.n);
  ctx.center.assign(static_cast<size_t>(ctx.n), Rat(0));
  if (center)
    for (Eigen::Index j = 0; j < ctx.n; ++j) ctx.center[static_cast<size_t>(j)] = (*center)(j);
  if (bound.sign() < 0) return true;
  return ctx.recurse(ctx.n - 1, bound, Rat(0));
}

} // namespace

bool enumerate_up_to(const MatQ& gram, const Rat& bound, const ShortVecFn& fn) {
  return run_enum(gram, nullptr, bound, fn, true);
}

bool enumerate_near(const MatQ& gram, const RowQ& center, const Rat& bound,
                    const ShortVecFn& fn) {
  return run_enum(gram, &center, bound, fn, false);
}

TernaryTheta ternary_theta(const Mat3I& even_gram, std::int64_t bound) {
  using I128 = __int128;
  if (bound < 0) throw input_error("ternary_theta: negative bound");
  // q coefficients of Q(x) = q00 x0^2 + q11 x1^2 + q22 x2^2
  //                        + q01 x0 x1 + q02 x0 x2 + q12 x1 x2.
  auto ge = [&](int i, int j) { return even_gram(i, j).to_i64(); };
  if (ge(0, 0) % 2 || ge(1, 1) % 2 || ge(2, 2) % 2)
    throw input_error("ternary_theta: diagonal of even Gram must be even");
  const std::int64_t q00 = ge(0, 0) / 2, q11 = ge(1, 1) / 2, q22 = ge(2, 2) / 2;
  const std::int64_t q01 = ge(0, 1), q02 = ge(0, 2), q12 = ge(1, 2);
  // Eliminate x0: 4*q00*Q = (2 q00 x0 + q01 x1 + q02 x2)^2 + G(x1,x2),
  // G = g11 x1^2 + g12 x1 x2 + g22 x2^2.
  const I128 g11 = I128(4) * q00 * q11 - I128(q01) * q01;
  const I128 g12 = I128(4) * q00 * q12 - I128(2) * q01 * q02;
  const I128 g22 = I128(4) * q00 * q22 - I128(q02) * q02;
  // Eliminate x1: 4*g11*G = (2 g11 x1 + g12 x2)^2 + h22 x2^2.
  const I128 h22 = I128(4) * g11 * g22 - g12 * g12;
  if (q00 <= 0 || g11 <= 0 || h22 <= 0)
    throw consistency_error("ternary_theta: form not positive definite");

  auto isqrt128 = [](I128 v) { return isqrt(Int(v)).to_i64(); };

  TernaryTheta out;
  out.all.assign(static_cast<size_t>(bound) + 1, 0);
  out.prim.assign(static_cast<size_t>(bound) + 1, 0);

  // x2^2 <= 16 q00 g11 B / h22
  const std::int64_t x2max = isqrt128(I128(16) * q00 * g11 * bound / h22);
  for (std::int64_t x2 = -x2max; x2 <= x2max; ++x2) {
    // g11 x1^2 + g12 x2 x1 + (g22 x2^2 - 4 q00 B) <= 0
    const I128 disc1 = (g12 * x2) * (g12 * x2) -
                       I128(4) * g11 * (g22 * x2 * x2 - I128(4) * q00 * bound);
    if (disc1 < 0) continue;
    const std::int64_t s1 = isqrt128(disc1);
    // x1 in [(-g12 x2 - s1)/(2 g11), (-g12 x2 + s1)/(2 g11)]
    const I128 b1 = -g12 * x2;
    const std::int64_t lo1 = static_cast<std::int64_t>(
        (b1 - s1) >= 0 ? (b1 - s1 + 2 * g11 - 1) / (2 * g11) : -((s1 - b1) / (2 * g11)));
    const std::int64_t hi1 = static_cast<std::int64_t>(
        (b1 + s1) >= 0 ? (b1 + s1) / (2 * g11) : -((-(b1 + s1) + 2 * g11 - 1) / (2 * g11)));
    for (std::int64_t x1 = lo1; x1 <= hi1; ++x1) {
      const std::int64_t L = q01 * x1 + q02 * x2;
      const std::int64_t C = q11 * x1 * x1 + q12 * x1 * x2 + q22 * x2 * x2;
      const I128 disc0 = I128(L) * L + I128(4) * q00 * (I128(bound) - C);
      if (disc0 < 0) continue;
      const std::int64_t s0 = isqrt128(disc0);
      const I128 blo = I128(-L) - s0, bhi = I128(-L) + s0;
      const std::int64_t lo0 = static_cast<std::int64_t>(
          blo >= 0 ? (blo + 2 * q00 - 1) / (2 * q00) : -((-blo) / (2 * q00)));
      const std::int64_t hi0 = static_cast<std::int64_t>(
          bhi >= 0 ? bhi / (2 * q00) : -((-bhi + 2 * q00 - 1) / (2 * q00)));
      const std::int64_t g12gcd = std::gcd(x1, x2);
      for (std::int64_t x0 = lo0; x0 <= hi0; ++x0) {
        const std::int64_t val = q00 * x0 * x0 + L * x0 + C;
        if (val < 0 || val > bound) continue; // rounding guard
        out.all[static_cast<size_t>(val)] += 1;
        if (std::gcd(g12gcd, x0) == 1) out.prim[static_cast<size_t>(val)] += 1;
      }
    }
  }
  return out;
}

} // namespace qlat
