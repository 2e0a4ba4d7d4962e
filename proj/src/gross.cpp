#include "qlat/gross.hpp"

#include "qlat/errors.hpp"
#include "qlat/intlinalg.hpp"
#include "qlat/quaternion.hpp"

namespace qlat {

Rat TernaryLattice::qdet() const { return Rat(det_bareiss(MatI(gram)), Int(8)); }

TernaryLattice gross_lattice(const QuatAlgebra& B, const QuatLattice& order_lat) {
  // Generators 2e_i - trd(e_i): scalar coordinate drops to zero, so work in
  // the pure coordinates (x1, x2, x3).
  MatQ rows(4, 3);
  for (int i = 0; i < 4; ++i) {
    RowQ e = order_lat.element(i);
    for (int j = 0; j < 3; ++j) rows(i, j) = Rat(2) * e(j + 1);
  }
  MatI num;
  Int den;
  to_common_den(rows, num, den);
  MatI h = hnf(num);
  if (h.rows() != 3) throw consistency_error("gross_lattice: rank != 3");

  MatQ lift(3, 4);
  for (int i = 0; i < 3; ++i) {
    lift(i, 0) = Rat(0);
    for (int j = 0; j < 3; ++j) lift(i, j + 1) = Rat(h(i, j), den);
  }
  TernaryLattice out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out.gram(i, j) = qtrd(qmul(B, lift.row(i), qconj(lift.row(j))))
                           .to_int("gross_lattice: non-integral pairing");
  return out;
}

TernaryLattice gross_lattice(const QuatOrder& R) {
  TernaryLattice out = gross_lattice(R.alg, R.lat);
  out.delta = R.alg.delta;
  out.level = R.level;
  return out;
}

namespace {

std::int64_t bound_of(Int m, const char* what) {
  if (m < Int(0)) throw input_error(std::string(what) + ": negative index");
  return m.to_i64();
}

} // namespace

Int rep_number(const TernaryLattice& L, Int m) {
  std::int64_t b = bound_of(m, "rep_number");
  return Int(ternary_theta(L.gram, b).all[static_cast<size_t>(b)]);
}

Int primitive_rep_number(const TernaryLattice& L, Int m) {
  std::int64_t b = bound_of(m, "primitive_rep_number");
  if (b == 0) throw input_error("primitive_rep_number: index must be positive");
  return Int(ternary_theta(L.gram, b).prim[static_cast<size_t>(b)]);
}

TernaryTheta theta_coeffs(const TernaryLattice& L, std::int64_t bound) {
  return ternary_theta(L.gram, bound);
}

} // namespace qlat
