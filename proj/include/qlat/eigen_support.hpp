#pragma once

#include <Eigen/Core>

#include "checked_int.hpp"
#include "rational.hpp"

// Eigen scalar traits for the exact types, plus the dense aliases used
// throughout.  Element vectors are rows; lattices are row spans; linear
// maps act on the right (x -> x*M).

namespace Eigen {

template <>
struct NumTraits<qlat::Int> : GenericNumTraits<qlat::Int> {
  typedef qlat::Int Real;
  typedef qlat::Rat NonInteger;
  typedef qlat::Int Nested;
  typedef qlat::Int Literal;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 8,
  };
  static inline int digits10() { return 37; }
};

template <>
struct NumTraits<qlat::Rat> : GenericNumTraits<qlat::Rat> {
  typedef qlat::Rat Real;
  typedef qlat::Rat NonInteger;
  typedef qlat::Rat Nested;
  typedef qlat::Rat Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 20,
  };
  static inline int digits10() { return 37; }
};

} // namespace Eigen

namespace qlat {

using MatI = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RowI = Eigen::Matrix<Int, 1, Eigen::Dynamic>;
using RowQ = Eigen::Matrix<Rat, 1, Eigen::Dynamic>;
using Vec4I = Eigen::Matrix<Int, 1, 4>;
using Vec4Q = Eigen::Matrix<Rat, 1, 4>;
using Mat4I = Eigen::Matrix<Int, 4, 4>;
using Mat4Q = Eigen::Matrix<Rat, 4, 4>;
using Mat3I = Eigen::Matrix<Int, 3, 3>;
using Mat3Q = Eigen::Matrix<Rat, 3, 3>;

template <class Derived>
MatQ to_rational(const Eigen::MatrixBase<Derived>& m, Int den = Int(1)) {
  MatQ r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j), den);
  return r;
}

} // namespace qlat
