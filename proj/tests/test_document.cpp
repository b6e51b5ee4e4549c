#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "trihom/trihom.hpp"

using namespace trihom;

namespace {

struct TempDir {
  std::filesystem::path p;
  TempDir() {
    p = std::filesystem::temp_directory_path() /
        ("trihom-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    std::filesystem::create_directories(p);
  }
  ~TempDir() { std::filesystem::remove_all(p); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("rational and Gaussian values survive the text round-trip") {
  for (const char* s : {"0", "17", "-3/7", "123456789123456789/2"}) {
    Rat r = rat_parse(s);
    CHECK(rat_parse(rat_str(r)) == r);
  }
  GaussRat g{Rat(-5, 3), Rat(7)};
  CHECK(gauss_parse(gauss_json(g)) == g);
  GaussRat z;
  CHECK(gauss_parse(gauss_json(z)) == z);
}

TEST_CASE("tables survive the JSON round-trip") {
  Realization rz(CoxeterSystem::from_type("A1"));
  TriGradedTable t = braid_table(rz, BraidWord::parse("1 1", 1), 8);
  TriGradedTable back = table_parse(table_json(t));
  CHECK(back.dims == t.dims);
  CHECK(back.cutoff == t.cutoff);
  CHECK(back.nvars == t.nvars);
  CHECK(back.hoch_top2 == t.hoch_top2);
}

TEST_CASE("series survive the JSON round-trip, including infinite windows") {
  WindowedSeries s(-4, WindowedSeries::kInf);
  s.add_term({-2, 1, 0}, GaussRat::I());
  s.add_term({0, 0, 0}, GaussRat(Rat(3, 2)));
  WindowedSeries back = series_parse(series_json(s));
  CHECK(back.terms() == s.terms());
  CHECK(back.lo() == s.lo());
  CHECK(back.hi() == s.hi());

  WindowedSeries b(-WindowedSeries::kInf, 5);
  WindowedSeries back2 = series_parse(series_json(b));
  CHECK(back2.lo() == b.lo());
  CHECK(back2.hi() == 5);
}

TEST_CASE("documents parse back to identical JSON") {
  Json doc = document_skeleton("invariant");
  doc["conventions"] = conventions_json();
  Realization rz(CoxeterSystem::from_type("A1"));
  doc["table"] = table_json(braid_table(rz, BraidWord::parse("1", 1), 6));
  std::string text = serialize_document(doc);
  Json back = parse_document(text);
  CHECK(back == doc);
  CHECK(serialize_document(back) == text);
  // Serialization is stable across repeated calls.
  CHECK(serialize_document(doc) == text);

  CHECK_THROWS_AS(parse_document("{\"schema_version\": 999}"), error);
  CHECK_THROWS_AS(parse_document("not json"), error);
}

TEST_CASE("convention hash is deterministic and well-formed") {
  std::string h = convention_hash();
  CHECK(h.size() == 16);
  CHECK(h == convention_hash());
  for (char c : h) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
}

TEST_CASE("disk cache stores and reloads complexes and tables") {
  TempDir tmp;
  DiskCache cache(tmp.p.string());
  REQUIRE(cache.enabled());
  Realization rz(CoxeterSystem::from_type("A1"));
  BraidWord b = BraidWord::parse("1 1", 1);

  CHECK_FALSE(cache.load_complex(rz, b).has_value());
  BimoduleComplex c = braid_complex(rz, b);
  cache.store_complex(rz, b, c);
  auto loaded = cache.load_complex(rz, b);
  REQUIRE(loaded.has_value());
  CHECK(loaded->terms() == c.terms());
  CHECK(loaded->diffs() == c.diffs());
  CHECK_NOTHROW(loaded->validate(true));

  TriGradedTable t = trigraded_dims(c, 8);
  cache.store_table(rz, b, t);
  auto tl = cache.load_table(rz, b, 8);
  REQUIRE(tl.has_value());
  CHECK(tl->dims == t.dims);
  // A different cutoff is a miss, not a wrong hit.
  CHECK_FALSE(cache.load_table(rz, b, 9).has_value());
}

TEST_CASE("cache keys separate words, systems and conventions") {
  Realization a1(CoxeterSystem::from_type("A1"));
  Realization a2(CoxeterSystem::from_type("A2"));
  BraidWord b1 = BraidWord::parse("1", 1);
  BraidWord b2 = BraidWord::parse("1 1", 1);
  CHECK(DiskCache::key(a1, b1) != DiskCache::key(a1, b2));
  CHECK(DiskCache::key(a1, b1) != DiskCache::key(a2, b1));
  CHECK(DiskCache::key(a1, b1) == DiskCache::key(a1, b1));
}

TEST_CASE("corrupt cache entries are detected and treated as misses") {
  TempDir tmp;
  DiskCache cache(tmp.p.string());
  Realization rz(CoxeterSystem::from_type("A1"));
  BraidWord b = BraidWord::parse("1", 1);
  cache.store_complex(rz, b, braid_complex(rz, b));

  // Flip a byte in the stored payload.
  std::filesystem::path file;
  for (auto& e : std::filesystem::directory_iterator(tmp.p))
    if (e.path().extension() == ".cx") file = e.path();
  REQUIRE(!file.empty());
  std::string blob;
  {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    blob = os.str();
  }
  blob[blob.size() / 2] ^= 0x7;
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << blob;
  }
  CHECK_FALSE(cache.load_complex(rz, b).has_value());
  CHECK(cache.stats().corrupt == 1);
  // Storing again overwrites the bad entry.
  cache.store_complex(rz, b, braid_complex(rz, b));
  CHECK(cache.load_complex(rz, b).has_value());
}

TEST_CASE("cached table pipeline equals the direct computation") {
  TempDir tmp;
  DiskCache cache(tmp.p.string());
  Realization rz(CoxeterSystem::from_type("A2"));
  BraidWord b = BraidWord::parse("1 -2", 2);

  TriGradedTable direct = braid_table(rz, b, 6);
  TriGradedTable first = cached_braid_table(cache, rz, b, 6);
  CHECK(first.dims == direct.dims);
  CHECK(cache.stats().misses == 1);
  TriGradedTable second = cached_braid_table(cache, rz, b, 6);
  CHECK(second.dims == direct.dims);
  CHECK(cache.stats().table_hits == 1);

  // Raising the cutoff reuses the stored complex.
  TriGradedTable bigger = cached_braid_table(cache, rz, b, 8);
  CHECK(bigger.dims == braid_table(rz, b, 8).dims);
  CHECK(cache.stats().complex_hits == 1);

  // A disabled cache still computes.
  DiskCache off("");
  CHECK_FALSE(off.enabled());
  TriGradedTable plain = cached_braid_table(off, rz, b, 6);
  CHECK(plain.dims == direct.dims);
}

TEST_CASE("document skeleton carries the schema header") {
  Json doc = document_skeleton("check");
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["kind"] == "check");
}
