#include "doctest.h"
#include "qlat/rational.hpp"
#include "qlat/errors.hpp"

using namespace qlat;

TEST_CASE("rational normalization and arithmetic") {
  Rat a(Int(6), Int(-4));
  CHECK(a.num == Int(-3));
  CHECK(a.den == Int(2));
  Rat b(Int(1), Int(6));
  CHECK(to_string(a + b) == "-4/3");
  CHECK(to_string(a * b) == "-1/4");
  CHECK(to_string(a - a) == "0");
  CHECK(to_string(Rat(5)) == "5");
  CHECK(a < b);
  CHECK(Rat(1, 3) + Rat(1, 3) + Rat(1, 3) == Rat(1));
  CHECK((Rat(2, 3) / Rat(4, 9)) == Rat(3, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), qlat::overflow_error);
}

TEST_CASE("rational floor/ceil/sqrt and to_int") {
  CHECK(floor_rat(Rat(7, 2)) == Int(3));
  CHECK(floor_rat(Rat(-7, 2)) == Int(-4));
  CHECK(ceil_rat(Rat(7, 2)) == Int(4));
  CHECK(ceil_rat(Rat(-7, 2)) == Int(-3));
  CHECK(Rat(12, 4).to_int("t") == Int(3));
  CHECK_THROWS_AS(Rat(1, 2).to_int("t"), consistency_error);
  CHECK(floor_sqrt(Rat(17, 4)) == Int(2));
  CHECK(floor_sqrt(Rat(35, 1)) == Int(5));
  CHECK(floor_sqrt(Rat(36, 1)) == Int(6));
}

TEST_CASE("exact decimal rendering") {
  CHECK(decimal_string(Rat(1, 10), 12) == "0.100000000000");
  CHECK(decimal_string(Rat(1, 3), 5) == "0.33333");
  CHECK(decimal_string(Rat(2, 3), 5) == "0.66667");
  CHECK(decimal_string(Rat(1), 3) == "1.00");
  CHECK(decimal_string(Rat(0), 5) == "0");
  CHECK(decimal_string(Rat(-1, 8), 4) == "-0.1250");
  CHECK(decimal_string(Rat(999, 1000), 2) == "1.0");
  CHECK(decimal_string(Rat(1, 10), 1) == "0.1");
  CHECK(decimal_string(Rat(123456, 1), 4) == "123500");
  CHECK(decimal_string(Rat(1, 1000), 2) == "0.0010");
  // Round half away from zero.
  CHECK(decimal_string(Rat(1, 2), 1) == "0.5");
  CHECK(decimal_string(Rat(15, 100), 1) == "0.2");
  CHECK(decimal_string(Rat(-15, 100), 1) == "-0.2");
  CHECK(decimal_string(Rat(25, 100), 1) == "0.3");
}
