#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "trihom/trihom.hpp"

using namespace trihom;

namespace {

MultiPoly random_poly(int nvars, int maxdeg, int nterms, std::mt19937& rng) {
  MultiPoly p(nvars);
  std::uniform_int_distribution<int> de(0, maxdeg);
  std::uniform_int_distribution<int> dc(-4, 4);
  for (int t = 0; t < nterms; ++t) {
    Mono m = mono_one();
    int budget = maxdeg;
    for (int v = 0; v < nvars; ++v) {
      int e = std::min(de(rng), budget);
      budget -= e;
      m = mono_mul(m, mono_var(v, e));
    }
    int c = dc(rng);
    if (c) p.add_term(m, Rat(c));
  }
  return p;
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("monomial packing round-trips") {
  Mono m = mono_mul(mono_var(0, 3), mono_mul(mono_var(2, 5), mono_var(7, 1)));
  CHECK(mono_exp(m, 0) == 3);
  CHECK(mono_exp(m, 1) == 0);
  CHECK(mono_exp(m, 2) == 5);
  CHECK(mono_exp(m, 7) == 1);
  CHECK(mono_degree(m) == 9);
  CHECK(mono_divisible(m, mono_var(2, 4)));
  CHECK_FALSE(mono_divisible(m, mono_var(1)));
  CHECK(mono_exp(mono_div(m, mono_var(0, 2)), 0) == 1);
}

TEST_CASE("monomial basis has the right size and degrees") {
  for (int m = 1; m <= 4; ++m)
    for (int d = 0; d <= 5; ++d) {
      auto basis = monomial_basis(m, d);
      CHECK((long)basis.size() == binom(d + m - 1, m - 1));
      for (Mono mo : basis) CHECK(mono_degree(mo) == d);
      std::set<Mono> distinct(basis.begin(), basis.end());
      CHECK(distinct.size() == basis.size());
    }
  CHECK(monomial_basis(0, 0).size() == 1);
  CHECK(monomial_basis(0, 2).empty());
}

TEST_CASE("polynomial ring identities") {
  std::mt19937 rng(7001);
  for (int it = 0; it < 20; ++it) {
    MultiPoly f = random_poly(3, 4, 4, rng);
    MultiPoly g = random_poly(3, 4, 4, rng);
    MultiPoly h = random_poly(3, 4, 4, rng);
    CHECK(f * g == g * f);
    CHECK((f + g) * h == f * h + g * h);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f - f == MultiPoly(3));
  }
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  MultiPoly sq = (x + y) * (x + y);
  CHECK(sq == x * x + x * y * MultiPoly::constant(2, 2) + y * y);
  CHECK(sq.is_homogeneous(2));
  CHECK(sq.degree() == 2);
}

TEST_CASE("exact division inverts multiplication") {
  std::mt19937 rng(7002);
  for (int it = 0; it < 20; ++it) {
    MultiPoly f = random_poly(3, 3, 4, rng);
    MultiPoly g = random_poly(3, 3, 3, rng);
    if (g.is_zero()) continue;
    CHECK(exact_divide(f * g, g) == f);
  }
  MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK_THROWS_AS(exact_divide(x, y), error);
  CHECK_THROWS_AS(exact_divide(x + MultiPoly::constant(2, 1), x), error);
}

TEST_CASE("substitution composes and widens") {
  std::mt19937 rng(7003);
  MultiPoly f = random_poly(2, 3, 4, rng);
  // Identity substitution.
  std::vector<MultiPoly> id{MultiPoly::variable(2, 0), MultiPoly::variable(2, 1)};
  CHECK(f.substitute(id) == f);
  // Swap then swap is the identity.
  std::vector<MultiPoly> swap{MultiPoly::variable(2, 1), MultiPoly::variable(2, 0)};
  CHECK(f.substitute(swap).substitute(swap) == f);
  CHECK(f.widen(4).nvars() == 4);
  CHECK(f.widen(4).term_count() == f.term_count());
}

TEST_CASE("chain-type Cartan data and reflection action") {
  Realization rz(CoxeterSystem::from_type("A2"));
  CHECK(rz.cartan(0, 0) == 2);
  CHECK(rz.cartan(0, 1) == -1);
  CHECK(rz.cartan(1, 0) == -1);

  std::mt19937 rng(7004);
  for (int it = 0; it < 10; ++it) {
    MultiPoly f = random_poly(2, 4, 4, rng);
    CHECK(rz.act(0, rz.act(0, f)) == f);  // involution
    CHECK(rz.act(1, rz.act(1, f)) == f);
    // Braid relation of the reflection action.
    MultiPoly lhs = rz.act(0, rz.act(1, rz.act(0, f)));
    MultiPoly rhs = rz.act(1, rz.act(0, rz.act(1, f)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("asymmetric Cartan pairs for the doubled and tripled bonds") {
  Realization b2(CoxeterSystem::from_type("B2"));
  CHECK(b2.cartan(0, 1) == -1);
  CHECK(b2.cartan(1, 0) == -2);
  Realization g2(CoxeterSystem::from_type("G2"));
  CHECK(g2.cartan(0, 1) == -1);
  CHECK(g2.cartan(1, 0) == -3);
  // Commuting product: reflections commute.
  Realization aa(CoxeterSystem::from_type("A1xA1"));
  MultiPoly f = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  CHECK(aa.act(0, aa.act(1, f)) == aa.act(1, aa.act(0, f)));
}

TEST_CASE("divided-difference operator basics") {
  Realization rz(CoxeterSystem::from_type("A2"));
  // On the simple roots themselves.
  CHECK(rz.demazure(0, rz.alpha(0)) == MultiPoly::constant(2, 2));
  CHECK(rz.demazure(0, rz.alpha(1)) == MultiPoly::constant(2, -1));
  CHECK(rz.demazure(1, rz.alpha(0)) == MultiPoly::constant(2, -1));
  CHECK(rz.pair_e(rz.alpha(0), 0) == 2);
  CHECK(rz.pair_e(rz.alpha(1), 0) == -1);
}

TEST_CASE("divided-difference operator identities hold on random input") {
  Realization rz(CoxeterSystem::from_type("B2"));
  std::mt19937 rng(7005);
  for (int s = 0; s < 2; ++s)
    for (int it = 0; it < 10; ++it) {
      MultiPoly f = random_poly(2, 4, 4, rng);
      MultiPoly g = random_poly(2, 4, 4, rng);
      // Square zero.
      CHECK(rz.demazure(s, rz.demazure(s, f)).is_zero());
      // Twisted Leibniz rule.
      MultiPoly lhs = rz.demazure(s, f * g);
      MultiPoly rhs = rz.demazure(s, f) * g + rz.act(s, f) * rz.demazure(s, g);
      CHECK(lhs == rhs);
      // Output of the operator is invariant.
      MultiPoly df = rz.demazure(s, f);
      CHECK(rz.act(s, df) == df);
    }
}

TEST_CASE("invariant-plus-root splitting of a variable") {
  for (const char* tag : {"A2", "B2", "G2"}) {
    Realization rz(CoxeterSystem::from_type(tag));
    for (int s = 0; s < 2; ++s)
      for (int r = 0; r < 2; ++r) {
        MultiPoly a = rz.invariant_part(s, r);
        CHECK(rz.act(s, a) == a);
        MultiPoly back = a + MultiPoly::variable(2, s, rz.half_cartan(s, r));
        CHECK(back == MultiPoly::variable(2, r));
      }
  }
}

TEST_CASE("action matrices square to the identity") {
  Realization rz(CoxeterSystem::from_type("G2"));
  for (int s = 0; s < 2; ++s) {
    auto m = rz.action_matrix(s);
    // m * m == I
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Rat v(0);
        for (int k = 0; k < 2; ++k) v += m[i][k] * m[k][j];
        CHECK(v == (i == j ? 1 : 0));
      }
  }
}
