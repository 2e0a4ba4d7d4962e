#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "eigen_support.hpp"
#include "rational.hpp"

namespace qlat {

// Exact rational Cholesky data for a positive definite Q-Gram G:
// Q(x) = sum_i d[i] * (x_i + sum_{j>i} r(i,j) x_j)^2.
struct RatCholesky {
  std::vector<Rat> d;
  MatQ r;
};
RatCholesky cholesky_rat(const MatQ& gram);

using ShortVecFn = std::function<bool(const RowI&, const Rat&)>;

// All x != 0 with Q(x) <= bound, one representative per {x, -x}
// (the one whose last nonzero coordinate is positive).
// Q(x) = x * gram * x^T.  Returns false iff the callback aborted.
bool enumerate_up_to(const MatQ& gram, const Rat& bound, const ShortVecFn& fn);

// All x in Z^n with Q(x - center) <= bound, both signs, center included
// when integral.  Callback value is Q(x - center).
bool enumerate_near(const MatQ& gram, const RowQ& center, const Rat& bound,
                    const ShortVecFn& fn);

// Theta coefficients of a positive definite ternary lattice.
// Input is the even (bilinear) Gram A with A(i,i) = 2Q(b_i),
// A(i,j) = Q(b_i+b_j)-Q(b_i)-Q(b_j); Q(x) = x A x^T / 2.
// Returns counts[m] = #{x : Q(x) = m} and prim[m] = #{x primitive}.
struct TernaryTheta {
  std::vector<std::int64_t> all;
  std::vector<std::int64_t> prim;
};
TernaryTheta ternary_theta(const Mat3I& even_gram, std::int64_t bound);

} // namespace qlat
