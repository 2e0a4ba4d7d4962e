#include "doctest.h"
#include "qlat/quadratic.hpp"
#include "qlat/errors.hpp"

using namespace qlat;

TEST_CASE("fundamental discriminant recognition and factoring") {
  CHECK(is_fundamental(Int(-3)));
  CHECK(is_fundamental(Int(-4)));
  CHECK(is_fundamental(Int(-7)));
  CHECK(is_fundamental(Int(-8)));
  CHECK(is_fundamental(Int(-163)));
  CHECK(!is_fundamental(Int(-9)));
  CHECK(!is_fundamental(Int(-12)));
  CHECK(!is_fundamental(Int(-16)));
  CHECK(!is_fundamental(Int(-27)));
  CHECK(!is_fundamental(Int(3)));

  auto o = factor_discriminant(Int(-4));
  CHECK((o.D == Int(-4) && o.c == Int(1)));
  o = factor_discriminant(Int(-12));
  CHECK((o.D == Int(-3) && o.c == Int(2)));
  o = factor_discriminant(Int(-48));
  CHECK((o.D == Int(-3) && o.c == Int(4)));
  o = factor_discriminant(Int(-63));
  CHECK((o.D == Int(-7) && o.c == Int(3)));
  o = factor_discriminant(Int(-32));
  CHECK((o.D == Int(-8) && o.c == Int(2)));
  CHECK_THROWS_AS(factor_discriminant(Int(-5)), input_error);
  CHECK_THROWS_AS(factor_discriminant(Int(4)), input_error);
  // Recomposition is the identity.
  for (long long d = -3; d >= -500; --d) {
    long long m = ((d % 4) + 4) % 4;
    if (m != 0 && m != 1) continue;
    auto q = factor_discriminant(Int(d));
    CHECK(q.disc() == Int(d));
    CHECK(is_fundamental(q.D));
  }
}

TEST_CASE("class number brute force fixtures") {
  // The nine imaginary quadratic fields with class number one.
  for (long long d : {-3, -4, -7, -8, -11, -19, -43, -67, -163})
    CHECK(class_number_bruteforce(Int(d)) == Int(1));
  CHECK(class_number_bruteforce(Int(-15)) == Int(2));
  CHECK(class_number_bruteforce(Int(-23)) == Int(3));
  CHECK(class_number_bruteforce(Int(-31)) == Int(3));
  CHECK(class_number_bruteforce(Int(-47)) == Int(5));
  CHECK(class_number_bruteforce(Int(-71)) == Int(7));
  CHECK(class_number_bruteforce(Int(-28)) == Int(1));
  CHECK_THROWS_AS(class_number_bruteforce(Int(-6)), input_error);
}

TEST_CASE("unit counts") {
  CHECK(unit_count(Int(-3), Int(1)) == Int(6));
  CHECK(unit_count(Int(-4), Int(1)) == Int(4));
  CHECK(unit_count(Int(-3), Int(2)) == Int(2));
  CHECK(unit_count(Int(-7), Int(1)) == Int(2));
  CHECK_THROWS_AS(unit_count(Int(-12), Int(1)), input_error);
}

TEST_CASE("class number formula matches brute force") {
  CHECK(class_number_formula(Int(-4), Int(2)) == Int(1));
  CHECK(class_number_formula(Int(-3), Int(2)) == Int(1));
  CHECK(class_number_formula(Int(-7), Int(3)) == Int(4));
  for (long long D : {-3, -4, -7, -8, -11, -15, -20, -23, -24, -163}) {
    for (long long c = 1; c <= 6; ++c) {
      Int d = Int(D) * Int(c) * Int(c);
      CHECK(class_number_formula(Int(D), Int(c)) == class_number_bruteforce(d));
    }
  }
  CHECK_THROWS_AS(class_number_formula(Int(-12), Int(1)), input_error);
}

TEST_CASE("batched table agrees with per-discriminant brute force") {
  const std::int64_t limit = 3000;
  auto table = class_number_table(limit);
  for (std::int64_t ad = 1; ad <= limit; ++ad) {
    std::int64_t m = ad % 4;
    if (m == 1 || m == 2) { // d = -ad must be 0,1 mod 4
      CHECK(table[ad] == 0);
      continue;
    }
    CHECK(Int(table[ad]) == class_number_bruteforce(Int(-ad)));
  }
  // class_number dispatch helper agrees too.
  CHECK(class_number(Int(-2999)) == class_number_bruteforce(Int(-2999)));
  CHECK(class_number(Int(-2048)) == class_number_bruteforce(Int(-2048)));
}
