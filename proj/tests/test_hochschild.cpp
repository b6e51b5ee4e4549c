#include <catch2/catch_amalgamated.hpp>

#include "trihom/trihom.hpp"

using namespace trihom;

namespace {

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

TriGradedTable table_of(const std::string& tag, const std::string& word, int cutoff,
                        int jobs = 1) {
  Realization rz(CoxeterSystem::from_type(tag));
  return trigraded_dims(braid_complex(rz, BraidWord::parse(word, rz.nvars())), cutoff, jobs);
}

}  // namespace

TEST_CASE("identity complex matches the closed-form table") {
  // For the regular bimodule on m variables the table row at (2i, 0) has
  // dimension C(m, i) * C(d - i + m - 1, m - 1) in internal degree d.
  for (int m = 1; m <= 2; ++m) {
    Realization rz(CoxeterSystem::from_type("A" + std::to_string(m)));
    TriGradedTable t = trigraded_dims(braid_complex(rz, BraidWord()), 12);
    CHECK(t.nvars == m);
    CHECK(t.hoch_top2 == 2 * m);
    for (int i = 0; i <= m; ++i)
      for (int d = 0; d <= 12; ++d)
        CHECK(t.at(2 * i, 0, d) == binom(m, i) * binom(d - i + m - 1, m - 1));
    // Nothing outside those keys.
    for (auto& [k, v] : t.dims) {
      CHECK(k[1] == 0);
      CHECK(k[0] % 2 == 0);
      CHECK(k[0] >= 0);
      CHECK(k[0] <= 2 * m);
      CHECK(v > 0);
    }
  }
}

TEST_CASE("zero-variable system has a one-entry table") {
  Realization rz(CoxeterSystem::from_type("A0"));
  TriGradedTable t = trigraded_dims(braid_complex(rz, BraidWord()), 12);
  CHECK(t.dims == std::map<std::array<int, 3>, long long>{{{0, 0, 0}, 1}});
}

TEST_CASE("single crossings collapse to one class") {
  TriGradedTable pos = table_of("A1", "1", 10);
  CHECK(pos.dims == std::map<std::array<int, 3>, long long>{{{2, 2, 0}, 1}});
  TriGradedTable neg = table_of("A1", "-1", 10);
  CHECK(neg.dims == std::map<std::array<int, 3>, long long>{{{0, 0, 0}, 1}});
}

TEST_CASE("cancelling word reproduces the identity table") {
  TriGradedTable a = table_of("A1", "1 -1", 10);
  TriGradedTable b = table_of("A1", "", 10);
  CHECK(a.dims == b.dims);
}

TEST_CASE("parallel slicing does not change the table") {
  TriGradedTable one = table_of("A2", "1 -2", 8, 1);
  TriGradedTable two = table_of("A2", "1 -2", 8, 2);
  CHECK(one.dims == two.dims);
  CHECK(one.cutoff == two.cutoff);
}

TEST_CASE("truncation keeps low degrees and the metadata") {
  TriGradedTable t = table_of("A1", "", 10);
  TriGradedTable s = t.truncated(4);
  CHECK(s.cutoff == 4);
  CHECK(s.hoch_top2 == t.hoch_top2);
  for (auto& [k, v] : s.dims) {
    CHECK(k[2] <= 4);
    CHECK(v == t.at(k[0], k[1], k[2]));
  }
  for (auto& [k, v] : t.dims)
    if (k[2] <= 4) CHECK(s.at(k[0], k[1], k[2]) == v);
}

TEST_CASE("tables carry only even doubled indices") {
  for (const char* word : {"1", "1 1", "1 -2", "2 1 2"}) {
    TriGradedTable t = table_of("A2", word, 8);
    for (auto& [k, v] : t.dims) {
      CHECK(k[0] % 2 == 0);
      CHECK(k[1] % 2 == 0);
      CHECK(k[0] >= 0);
      CHECK(k[0] <= t.hoch_top2);
      CHECK(k[2] <= 8);
      CHECK(v > 0);
    }
  }
}

TEST_CASE("row generating functions fit rational forms") {
  TriGradedTable t = table_of("A2", "1 1", 12);
  auto rows = hh_hilbert(t, 3);
  // Every table entry is reproduced by expanding its row numerator.
  for (auto& [key, num] : rows) {
    GradedDims expanded = num.expand(t.nvars, t.cutoff);
    for (auto& [d, v] : expanded.dims) CHECK(v == t.at(key.first, key.second, d));
  }
  // And every nonzero entry belongs to some fitted row.
  for (auto& [k, v] : t.dims) CHECK(rows.count({k[0], k[1]}) == 1);
}

TEST_CASE("identity row numerators are powers of the Koszul factor") {
  // For the regular bimodule on two variables the row (2i, 0) has Hilbert
  // series C(2, i) q^i / (1-q)^2.
  TriGradedTable t = table_of("A2", "", 12);
  auto rows = hh_hilbert(t, 3);
  for (int i = 0; i <= 2; ++i) {
    REQUIRE(rows.count({2 * i, 0}) == 1);
    std::map<int, long long> want{{i, binom(2, i)}};
    CHECK(rows.at({2 * i, 0}).coeffs == want);
  }
}
