#include <catch2/catch_amalgamated.hpp>

#include "trihom/trihom.hpp"

using namespace trihom;

TEST_CASE("type tags build the expected Coxeter matrices") {
  CoxeterSystem a3 = CoxeterSystem::from_type("A3");
  CHECK(a3.rank() == 3);
  CHECK(a3.m_entry(0, 1) == 3);
  CHECK(a3.m_entry(1, 2) == 3);
  CHECK(a3.m_entry(0, 2) == 2);
  CHECK(a3.is_type_a());
  CHECK(a3.type() == "A3");

  CoxeterSystem b2 = CoxeterSystem::from_type("B2");
  CHECK(b2.m_entry(0, 1) == 4);
  CHECK_FALSE(b2.is_type_a());

  CoxeterSystem g2 = CoxeterSystem::from_type("G2");
  CHECK(g2.m_entry(0, 1) == 6);

  CoxeterSystem aa = CoxeterSystem::from_type("A1xA1");
  CHECK(aa.rank() == 2);
  CHECK(aa.m_entry(0, 1) == 2);

  CoxeterSystem triv = CoxeterSystem::from_type("A0");
  CHECK(triv.rank() == 0);
  CHECK(triv.is_type_a());
}

TEST_CASE("classification recovers canonical names from raw matrices") {
  CHECK(CoxeterSystem::from_matrix({{1, 3}, {3, 1}}).type() == "A2");
  CHECK(CoxeterSystem::from_matrix({{1, 4}, {4, 1}}).type() == "B2");
  CHECK(CoxeterSystem::from_matrix({{1, 6}, {6, 1}}).type() == "G2");
  CHECK(CoxeterSystem::from_matrix({{1, 2}, {2, 1}}).type() == "A1xA1");
  CHECK(CoxeterSystem::from_type("I2(4)").type() == "B2");
  CHECK(CoxeterSystem::from_type("I2(6)").type() == "G2");
  // Order-4 bond in the middle of a path is rejected.
  CHECK_THROWS_AS(CoxeterSystem::from_matrix({{1, 4, 2}, {4, 1, 4}, {2, 4, 1}}), error);
  // Non-crystallographic bond is rejected.
  CHECK_THROWS_AS(CoxeterSystem::from_type("I2(5)"), error);
  CHECK_THROWS_AS(CoxeterSystem::from_matrix({{1, 5}, {5, 1}}), error);
}

TEST_CASE("prefix subsystem keeps the leading generators") {
  CoxeterSystem b3 = CoxeterSystem::from_type("B3");
  CHECK(b3.prefix(2).type() == "A2");  // order-4 bond sits at the far end
  CHECK(b3.prefix(0).rank() == 0);
  CoxeterSystem a3 = CoxeterSystem::from_type("A3");
  CHECK(a3.prefix(2).type() == "A2");
  CHECK(a3.prefix(1).type() == "A1");
}

TEST_CASE("braid words parse, print and validate") {
  BraidWord w = BraidWord::parse("1 -2 1", 2);
  CHECK(w.length() == 3);
  CHECK(w.str() == "1 -2 1");
  CHECK(w.exponent_sum() == 1);
  CHECK(w.generator(0) == 0);
  CHECK(w.generator(1) == 1);
  CHECK(w.sign(1) == -1);
  CHECK(BraidWord::parse("", 2).length() == 0);

  CHECK_THROWS_AS(BraidWord::parse("0", 2), error);
  CHECK_THROWS_AS(BraidWord::parse("3", 2), error);
  CHECK_THROWS_AS(BraidWord::parse("x", 2), error);
  CHECK_THROWS_AS(BraidWord::parse("1x", 2), error);
}

TEST_CASE("braid word operations") {
  BraidWord w = BraidWord::parse("1 2 -1", 2);
  CHECK(w.inverse().str() == "1 -2 -1");
  CHECK((w * w.inverse()).length() == 6);
  CHECK(w.mirror().str() == "-1 -2 1");
  CHECK(w.mirror().exponent_sum() == -w.exponent_sum());
  CHECK(w.rotated(1).str() == "2 -1 1");
  CHECK(w.rotated(-1).str() == "-1 1 2");
  CHECK(w.rotated(3) == w);
  CHECK(w.stabilized(3, +1).str() == "1 2 -1 3");
  CHECK(w.stabilized(3, -1).str() == "1 2 -1 -3");
  CHECK(BraidWord::parse("1 1 1", 1).exponent_sum() == 3);
}

TEST_CASE("parabolic realization restricts the Cartan data") {
  Realization big(CoxeterSystem::from_type("A3"));
  Realization sub = big.prefix(2);
  CHECK(sub.nvars() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(sub.cartan(i, j) == big.cartan(i, j));
}
