#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "qlat/arith.hpp"
#include "qlat/census.hpp"
#include "qlat/equidist.hpp"
#include "qlat/errors.hpp"
#include "qlat/gross.hpp"
#include "qlat/ideals.hpp"
#include "qlat/quadratic.hpp"
#include "qlat/quatorder.hpp"

using namespace qlat;

namespace {

Int enumerated_class_number(Int delta, Int level) {
  QuatAlgebra B = build_algebra(prime_divisors(delta));
  ClassSet cs = right_ideal_class_set(eichler_order(maximal_order(B), level));
  return Int(static_cast<long long>(cs.classes.size()));
}

} // namespace

TEST_CASE("special-divisor classification") {
  CHECK(classify_divisor(Int(77), Int(1), Int(7), Int(-7)) == DivisorClass::superspecial);
  CHECK(classify_divisor(Int(77), Int(1), Int(11), Int(-11)) == DivisorClass::superspecial);
  CHECK(classify_divisor(Int(77), Int(1), Int(7), Int(-15)) == DivisorClass::smooth_supersingular);
  CHECK(classify_divisor(Int(77), Int(1), Int(5), Int(-4)) == DivisorClass::ordinary);
  CHECK(classify_divisor(Int(77), Int(1), Int(5), Int(-3)) == DivisorClass::supersingular);
  CHECK(classify_divisor(Int(77), Int(1), Int(5), Int(-20)) == DivisorClass::supersingular);

  // a ramified prime cannot split in a CM field acting on the curve
  CHECK(kronecker(Int(-3), Int(7)) == 1);
  CHECK_THROWS_AS(classify_divisor(Int(77), Int(1), Int(7), Int(-3)), input_error);

  CHECK_THROWS_AS(classify_divisor(Int(77), Int(1), Int(6), Int(-7)), input_error);
  CHECK_THROWS_AS(classify_divisor(Int(77), Int(1), Int(5), Int(-12)), input_error);
  CHECK_THROWS_AS(classify_divisor(Int(7), Int(1), Int(5), Int(-3)), input_error);
  CHECK_THROWS_AS(classify_divisor(Int(77), Int(2), Int(2), Int(-7)), input_error);

  // the four outcomes partition the valid domain
  for (long long a = 3; a <= 50; ++a) {
    Int D(-a);
    if (!is_fundamental(D)) continue;
    for (long long p : {5, 13}) {
      DivisorClass c = classify_divisor(Int(77), Int(1), Int(p), D);
      bool split = kronecker(D, Int(p)) == 1;
      CHECK(c == (split ? DivisorClass::ordinary : DivisorClass::supersingular));
    }
    int k7 = kronecker(D, Int(7));
    if (k7 == 1) {
      CHECK_THROWS_AS(classify_divisor(Int(77), Int(1), Int(7), D), input_error);
    } else {
      DivisorClass c = classify_divisor(Int(77), Int(1), Int(7), D);
      CHECK(c == (k7 == 0 ? DivisorClass::superspecial : DivisorClass::smooth_supersingular));
    }
  }

  CHECK(divisor_class_name(DivisorClass::ordinary) == "ordinary");
  CHECK(divisor_class_name(DivisorClass::supersingular) == "supersingular");
  CHECK(divisor_class_name(DivisorClass::superspecial) == "superspecial");
  CHECK(divisor_class_name(DivisorClass::smooth_supersingular) == "smooth-supersingular");
}

TEST_CASE("genus of the indefinite curve") {
  CHECK(shimura_genus(Int(77), Int(1)) == Int(5));
  CHECK(shimura_genus(Int(6), Int(1)) == Int(0));
  CHECK(shimura_genus(Int(26), Int(1)) == Int(2));
  CHECK(shimura_genus(Int(14), Int(1)) == Int(1));
  CHECK(shimura_genus(Int(15), Int(1)) == Int(1));
  CHECK(shimura_genus(Int(35), Int(1)) == Int(3));
  CHECK(shimura_genus(Int(38), Int(1)) == Int(2));
  CHECK(shimura_genus(Int(6), Int(5)) == Int(1));

  CHECK_THROWS_AS(shimura_genus(Int(1), Int(1)), input_error);
  CHECK_THROWS_AS(shimura_genus(Int(4), Int(1)), input_error);
  CHECK_THROWS_AS(shimura_genus(Int(7), Int(1)), input_error);
  CHECK_THROWS_AS(shimura_genus(Int(6), Int(2)), input_error);
}

TEST_CASE("supersingular point count") {
  SupersingularCount c = supersingular_count(Int(13), Int(5));
  CHECK(c.applicable);
  CHECK(c.count == Int(48));

  CHECK_FALSE(supersingular_count(Int(13), Int(1)).applicable);
  CHECK_FALSE(supersingular_count(Int(13), Int(0)).applicable);
  CHECK(supersingular_count(Int(13), Int(1)).count == Int(0));

  // strictly increasing in each argument on the valid range
  CHECK(supersingular_count(Int(11), Int(5)).count < supersingular_count(Int(13), Int(5)).count);
  CHECK(supersingular_count(Int(13), Int(5)).count < supersingular_count(Int(13), Int(6)).count);

  CHECK_THROWS_AS(supersingular_count(Int(9), Int(5)), input_error);
}

TEST_CASE("definite class-number formula equals enumeration") {
  CHECK(eichler_class_number(Int(2), Int(1)) == Int(1));
  CHECK(eichler_class_number(Int(3), Int(1)) == Int(1));
  CHECK(eichler_class_number(Int(11), Int(1)) == Int(2));
  CHECK(eichler_class_number(Int(11), Int(7)) == Int(8));
  CHECK(eichler_class_number(Int(7), Int(11)) == Int(6));
  CHECK(eichler_class_number(Int(2), Int(11)) == Int(1));

  for (auto [d, n] : {std::pair<long long, long long>{2, 1}, {3, 1}, {5, 1}, {7, 1},
                      {13, 1}, {2, 3}, {3, 2}, {5, 2}, {30, 1}, {11, 2}})
    CHECK(eichler_class_number(Int(d), Int(n)) == enumerated_class_number(Int(d), Int(n)));

  CHECK_THROWS_AS(eichler_class_number(Int(1), Int(1)), input_error);
  CHECK_THROWS_AS(eichler_class_number(Int(6), Int(1)), input_error);
  CHECK_THROWS_AS(eichler_class_number(Int(4), Int(1)), input_error);
  CHECK_THROWS_AS(eichler_class_number(Int(11), Int(11)), input_error);
}

TEST_CASE("superspecial point count") {
  CHECK(superspecial_count(Int(77), Int(7), Int(1)) == Int(8));
  CHECK(superspecial_count(Int(77), Int(7), Int(1)) == eichler_class_number(Int(11), Int(7)));
  CHECK(superspecial_count(Int(77), Int(11), Int(1)) == Int(6));
  CHECK(superspecial_count(Int(6), Int(2), Int(1)) == eichler_class_number(Int(3), Int(2)));

  CHECK_THROWS_AS(superspecial_count(Int(77), Int(5), Int(1)), input_error);
  CHECK_THROWS_AS(superspecial_count(Int(77), Int(7), Int(7)), input_error);
  CHECK_THROWS_AS(superspecial_count(Int(7), Int(7), Int(1)), input_error);
}

TEST_CASE("dual graph of the degenerate fiber") {
  DualGraph g = dual_graph(Int(77), Int(7), Int(1));
  CHECK(g.delta == Int(77));
  CHECK(g.p == Int(7));
  CHECK(g.level == Int(1));
  REQUIRE(g.vertex_units_a.size() == 2); // class set of (11, 1)
  CHECK(g.vertex_units_b == g.vertex_units_a);
  CHECK(g.vertex_units_a[0] == Int(2));
  CHECK(g.vertex_units_a[1] == Int(3));
  REQUIRE(g.edges.size() == 8); // class set of (11, 7)
  CHECK(g.components() == 1);
  CHECK(g.betti() == Int(5));

  std::vector<long long> edge_units;
  for (const auto& e : g.edges) {
    CHECK(e.a >= 0);
    CHECK(e.a < 2);
    CHECK(e.b >= 0);
    CHECK(e.b < 2);
    edge_units.push_back(e.unit_order.to_i64());
  }
  std::sort(edge_units.begin(), edge_units.end());
  CHECK(edge_units == std::vector<long long>{1, 1, 1, 1, 1, 1, 3, 3});

  DualGraph g2 = dual_graph(Int(77), Int(11), Int(1));
  CHECK(g2.vertex_units_a.size() == 1); // class set of (7, 1)
  CHECK(g2.edges.size() == 6);          // class set of (7, 11)
  CHECK(g2.betti() == Int(5));

  DualGraph small = dual_graph(Int(6), Int(2), Int(1));
  CHECK(small.vertex_units_a.size() == 1);
  CHECK(small.edges.size() == 1);
  CHECK(small.betti() == Int(0));
  CHECK(dual_graph_edge_list(small) == "# vertices 0..0 side a, 1..1 side b\n0 1\n");

  CHECK_THROWS_AS(dual_graph(Int(77), Int(5), Int(1)), input_error);
  CHECK_THROWS_AS(dual_graph(Int(7), Int(7), Int(1)), input_error);
  CHECK_THROWS_AS(dual_graph(Int(77), Int(7), Int(77)), input_error);
}

TEST_CASE("Betti number equals genus across degenerating curves") {
  for (long long d : {10, 15, 22, 26}) {
    Int genus = shimura_genus(Int(d), Int(1));
    for (const Int& p : prime_divisors(Int(d))) {
      DualGraph g = dual_graph(Int(d), p, Int(1));
      CHECK(g.betti() == genus);
      CHECK(g.components() == 1);
    }
  }
}

TEST_CASE("representation-to-class-number ratio table") {
  RatioTable t = ratio_experiment(Int(11), Int(1), Int(3), Int(60));
  REQUIRE(!t.rows.empty());

  // the locus-fundamental discriminants in range, in |D| order
  std::vector<long long> want;
  for (long long a = 3; a <= 60; ++a) {
    long long r = (-a) % 4;
    if (r < 0) r += 4;
    if (r != 0 && r != 1) continue;
    if (factor_discriminant(Int(-a)).c % Int(11) == Int(0)) continue;
    want.push_back(-a);
  }
  std::vector<long long> got;
  for (const RatioRow& r : t.rows) got.push_back(r.D.to_i64());
  CHECK(got == want);

  // spot rows: trace-zero lattices represent 3 and 4 once each, per class
  CHECK(t.rows[0].D == Int(-3));
  CHECK(t.rows[0].rstar == std::vector<Int>{Int(0), Int(2)});
  CHECK(t.rows[0].hD == Int(1));
  CHECK(t.rows[0].ratio == std::vector<Rat>{Rat(0), Rat(2)});
  CHECK(t.rows[1].D == Int(-4));
  CHECK(t.rows[1].rstar == std::vector<Int>{Int(2), Int(0)});

  QuatAlgebra B = build_algebra({Int(11)});
  ClassSet cs = right_ideal_class_set(eichler_order(maximal_order(B), Int(1)));
  std::vector<TernaryLattice> gross = class_gross_lattices(cs);
  for (const RatioRow& r : t.rows) {
    CHECK(r.hD == Int(class_number(r.D)));
    bool split = kronecker(r.D, Int(11)) == 1;
    for (size_t i = 0; i < r.rstar.size(); ++i) {
      CHECK(r.rstar[i] >= Int(0));
      CHECK(r.ratio[i] == Rat(r.rstar[i], r.hD));
      if (split) CHECK(r.rstar[i] == Int(0));
      if (abs(r.D) <= Int(20))
        CHECK(r.rstar[i] == primitive_rep_number(gross[i], abs(r.D)));
    }
  }

  CHECK(max_ratio_in_window(t, Int(3), Int(5)) == Rat(2));
  CHECK_THROWS_AS(max_ratio_in_window(t, Int(5), Int(7)), input_error);

  std::string csv = ratio_csv(t);
  CHECK(csv.rfind("D,r_0,r_1,h,ratio_0,ratio_1\n", 0) == 0);
  CHECK(csv.find("-3,0,2,1,0/1,2/1\n") != std::string::npos);

  // determinism across worker counts
  RatioTable t2 = ratio_experiment(Int(11), Int(1), Int(3), Int(60), 2);
  CHECK(ratio_csv(t2) == csv);

  CHECK_THROWS_AS(ratio_experiment(Int(11), Int(1), Int(2), Int(60)), input_error);
  CHECK_THROWS_AS(ratio_experiment(Int(11), Int(1), Int(10), Int(3)), input_error);
}
