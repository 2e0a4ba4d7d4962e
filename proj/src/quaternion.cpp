#include "qlat/quaternion.hpp"

#include <algorithm>

#include "qlat/errors.hpp"

namespace qlat {

QuatAlgebra algebra_from_pair(Int a, Int b) {
  if (a >= Int(0) || b >= Int(0)) throw input_error("algebra_from_pair: not definite");
  QuatAlgebra B{a, b, quaternion_ramification(a, b), Int(1)};
  for (Int p : B.ram) B.delta *= p;
  return B;
}

QuatAlgebra build_algebra(std::vector<Int> ram) {
  if (ram.empty()) throw input_error("build_algebra: empty ramification set");
  std::sort(ram.begin(), ram.end());
  if (std::adjacent_find(ram.begin(), ram.end()) != ram.end())
    throw input_error("build_algebra: repeated prime");
  for (Int p : ram)
    if (!is_prime(p)) throw input_error("build_algebra: non-prime in ramification set");
  if (ram.size() % 2 == 0)
    throw input_error("build_algebra: definite algebra needs odd finite ramification");
  Int delta = 1;
  for (Int p : ram) delta *= p;
  Int bound = Int(8) * delta * delta + 64;
  for (Int s = 2; s <= bound; s += 1) {
    for (Int aa = 1; aa < s; aa += 1) {
      Int a = -aa, b = aa - s;
      if (quaternion_ramification(a, b) == ram) return algebra_from_pair(a, b);
    }
  }
  throw consistency_error("build_algebra: search bound exceeded");
}

RowQ qone() {
  RowQ e(4);
  e << Rat(1), Rat(0), Rat(0), Rat(0);
  return e;
}

RowQ qelem(Rat x0, Rat x1, Rat x2, Rat x3) {
  RowQ e(4);
  e << x0, x1, x2, x3;
  return e;
}

RowQ qmul(const QuatAlgebra& B, const RowQ& x, const RowQ& y) {
  Rat a(B.a), b(B.b), ab(B.a * B.b);
  return qelem(
      x(0) * y(0) + a * x(1) * y(1) + b * x(2) * y(2) - ab * x(3) * y(3),
      x(0) * y(1) + x(1) * y(0) - b * x(2) * y(3) + b * x(3) * y(2),
      x(0) * y(2) + x(2) * y(0) + a * x(1) * y(3) - a * x(3) * y(1),
      x(0) * y(3) + x(3) * y(0) + x(1) * y(2) - x(2) * y(1));
}

RowQ qconj(const RowQ& x) { return qelem(x(0), -x(1), -x(2), -x(3)); }

Rat qtrd(const RowQ& x) { return Rat(2) * x(0); }

Rat qnrd(const QuatAlgebra& B, const RowQ& x) {
  Rat a(B.a), b(B.b);
  return x(0) * x(0) - a * x(1) * x(1) - b * x(2) * x(2) + a * b * x(3) * x(3);
}

Mat4Q right_mult_matrix(const QuatAlgebra& B, const RowQ& g) {
  Mat4Q m(4, 4);
  for (int s = 0; s < 4; ++s) {
    RowQ e = qelem(Rat(s == 0), Rat(s == 1), Rat(s == 2), Rat(s == 3));
    m.row(s) = qmul(B, e, g);
  }
  return m;
}

Mat4Q left_mult_matrix(const QuatAlgebra& B, const RowQ& g) {
  Mat4Q m(4, 4);
  for (int s = 0; s < 4; ++s) {
    RowQ e = qelem(Rat(s == 0), Rat(s == 1), Rat(s == 2), Rat(s == 3));
    m.row(s) = qmul(B, g, e);
  }
  return m;
}

RowQ qinv(const QuatAlgebra& B, const RowQ& x) {
  Rat n = qnrd(B, x);
  if (n.is_zero()) throw input_error("qinv: zero norm");
  RowQ c = qconj(x);
  for (int s = 0; s < 4; ++s) c(s) /= n;
  return c;
}

} // namespace qlat
