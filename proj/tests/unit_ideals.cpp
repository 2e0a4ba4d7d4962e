#include <algorithm>
#include <vector>

#include "doctest.h"
#include "qlat/ideals.hpp"
#include "qlat/intlinalg.hpp"

using namespace qlat;

namespace {

QuatOrder small_order(long long q) { return maximal_order(build_algebra({Int(q)})); }

std::vector<Int> weights(const ClassSet& cs) {
  std::vector<Int> w;
  for (const auto& c : cs.classes) w.push_back(c.unit_count);
  std::sort(w.begin(), w.end());
  return w;
}

} // namespace

TEST_CASE("eichler_mass") {
  CHECK(eichler_mass(Int(2), Int(1)) == Rat(Int(1), Int(12)));
  CHECK(eichler_mass(Int(3), Int(1)) == Rat(Int(1), Int(6)));
  CHECK(eichler_mass(Int(11), Int(1)) == Rat(Int(5), Int(6)));
  CHECK(eichler_mass(Int(11), Int(7)) == Rat(Int(20), Int(3)));
  CHECK(eichler_mass(Int(7), Int(11)) == Rat(Int(6)));
  CHECK(eichler_mass(Int(30), Int(1)) == Rat(Int(2), Int(3)));
  CHECK_THROWS_AS(eichler_mass(Int(4), Int(1)), input_error);
}

TEST_CASE("ideal norm and normalized gram of an order") {
  QuatOrder o = small_order(11);
  CHECK(ideal_norm(o.alg, o.lat) == Int(1));
  MatI e = normalized_even_gram(o.alg, o.lat, Int(1));
  CHECK(det_bareiss(e) == Int(11 * 11));
  for (int i = 0; i < 4; ++i) CHECK(e(i, i).is_even());
}

TEST_CASE("neighbors: count, norm, containment") {
  QuatOrder o = small_order(11);
  for (long long pp : {2, 3, 5}) {
    Int p(pp);
    auto nbs = neighbors(o, o.lat, p);
    CHECK(Int(static_cast<long long>(nbs.size())) == p + Int(1));
    for (const auto& j : nbs) {
      CHECK(ideal_norm(o.alg, j) == p);
      CHECK(lattice_index(o.lat, j) == Rat(p * p));
      // p O inside J inside O
      for (int i = 0; i < 4; ++i) {
        CHECK(lattice_contains(o.lat, j.element(i)));
        CHECK(lattice_contains(j, Rat(p) * o.lat.element(i)));
      }
    }
  }
  CHECK_THROWS_AS(neighbors(o, o.lat, Int(11)), input_error);
  CHECK_THROWS_AS(neighbors(o, o.lat, Int(4)), input_error);
}

TEST_CASE("reduce_ideal fixes the unit ideal and shrinks neighbors") {
  QuatOrder o = small_order(11);
  RightIdeal r = reduce_ideal(o, o.lat);
  CHECK(r.nr == Int(1));
  CHECK(r.lat == o.lat);
  for (const auto& j : neighbors(o, o.lat, Int(2))) {
    RightIdeal red = reduce_ideal(o, j);
    CHECK(red.nr >= Int(1));
    CHECK(red.nr <= Int(3)); // Minkowski: nr <= ceil(sqrt(11/2))
    CHECK(ideal_norm(o.alg, red.lat) == red.nr);
    // reduced ideal is integral
    for (int i = 0; i < 4; ++i) CHECK(lattice_contains(o.lat, red.lat.element(i)));
  }
}

TEST_CASE("class sets of maximal orders with one class") {
  struct Row {
    long long q;
    long long w;
  };
  for (Row r : {Row{2, 12}, Row{3, 6}, Row{5, 3}, Row{7, 2}, Row{13, 1}}) {
    CAPTURE(r.q);
    ClassSet cs = right_ideal_class_set(small_order(r.q));
    CHECK(cs.classes.size() == 1);
    CHECK(cs.classes[0].unit_count == Int(r.w));
    CHECK(cs.classes[0].ideal.nr == Int(1));
    CHECK(cs.mass == eichler_mass(Int(r.q), Int(1)));
  }
}

TEST_CASE("class set of the discriminant 11 maximal order") {
  ClassSet cs = right_ideal_class_set(small_order(11));
  REQUIRE(cs.classes.size() == 2);
  CHECK(weights(cs) == std::vector<Int>{Int(2), Int(3)});
  CHECK(cs.mass == Rat(Int(5), Int(6)));
  // exactly one principal class
  int principal = 0;
  for (const auto& c : cs.classes) principal += (c.ideal.nr == Int(1)) ? 1 : 0;
  CHECK(principal == 1);
  // classes are pairwise non-isomorphic and self-isomorphic
  CHECK(is_isomorphic(cs.order.alg, cs.classes[0].ideal, cs.classes[0].ideal));
  CHECK(!is_isomorphic(cs.order.alg, cs.classes[0].ideal, cs.classes[1].ideal));
  // canonical grams have determinant (delta*level)^2 and differ
  for (const auto& c : cs.classes) CHECK(det_bareiss(c.canonical_gram) == Int(121));
  CHECK(cs.classes[0].key != cs.classes[1].key);
}

TEST_CASE("class set is closed under neighbors at another prime") {
  ClassSet cs = right_ideal_class_set(small_order(11));
  for (const auto& c : cs.classes)
    for (const auto& j : neighbors(cs.order, c.ideal.lat, Int(3))) {
      RightIdeal red = reduce_ideal(cs.order, j);
      bool found = false;
      for (const auto& d : cs.classes)
        if (is_isomorphic(cs.order.alg, d.ideal, red)) {
          found = true;
          break;
        }
      CHECK(found);
    }
}

TEST_CASE("class sets of Eichler orders") {
  QuatOrder o11 = small_order(11);
  ClassSet cs = right_ideal_class_set(eichler_order(o11, Int(7)));
  CHECK(cs.classes.size() == 8);
  CHECK(cs.mass == Rat(Int(20), Int(3)));
  CHECK(weights(cs) ==
        std::vector<Int>{Int(1), Int(1), Int(1), Int(1), Int(1), Int(1), Int(3), Int(3)});
  for (const auto& c : cs.classes) CHECK(det_bareiss(c.canonical_gram) == Int(77 * 77));

  QuatOrder o7 = small_order(7);
  ClassSet cs2 = right_ideal_class_set(eichler_order(o7, Int(11)));
  CHECK(cs2.classes.size() == 6);
  CHECK(cs2.mass == Rat(Int(6)));
  CHECK(weights(cs2) == std::vector<Int>(6, Int(1)));

  ClassSet cs3 = right_ideal_class_set(eichler_order(small_order(2), Int(11)));
  CHECK(cs3.classes.size() == 1);
  CHECK(cs3.mass == Rat(Int(1)));
}

TEST_CASE("left orders of all classes have the right discriminant") {
  ClassSet cs = right_ideal_class_set(eichler_order(small_order(11), Int(7)));
  for (const auto& c : cs.classes) {
    QuatOrder ol = left_order(cs.order, c.ideal);
    CHECK(discrd(ol.alg, ol.lat) == Int(77));
    CHECK(unit_order(ol.alg, ol.lat) == c.unit_count);
  }
}
