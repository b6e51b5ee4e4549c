#pragma once
// On-disk cache for minimized complexes and trigraded tables.  Files are
// plain text with a checksummed header; any mismatch (missing file, bad
// checksum, malformed payload, wrong realization) is treated as a miss so a
// corrupt cache can only cost time, never correctness.  Writers go through a
// temp file + rename so concurrent runs see either the old or the new entry.
//
// Keys: complexes by (type, word, convention hash); tables additionally by
// cutoff.  A table miss with a complex hit still saves the expensive part —
// raising the cutoff reuses the minimized complex and recomputes slices.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "trihom/complex.hpp"
#include "trihom/document.hpp"
#include "trihom/hochschild.hpp"

namespace trihom {

struct CacheStats {
  int complex_hits = 0;
  int table_hits = 0;
  int misses = 0;
  int corrupt = 0;
};

class DiskCache {
 public:
  DiskCache() = default;
  explicit DiskCache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  const CacheStats& stats() const { return stats_; }

  static std::string key(const Realization& rz, const BraidWord& b) {
    std::string s = rz.system().type() + "|" + b.str() + "|" + convention_hash();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(s));
    return std::string(buf);
  }

  std::optional<BimoduleComplex> load_complex(const Realization& rz, const BraidWord& b) {
    if (!enabled()) return std::nullopt;
    std::string payload;
    if (!read_checked(path(key(rz, b), "cx"), &payload)) return std::nullopt;
    try {
      BimoduleComplex c = parse_complex(rz, payload);
      c.validate(false);
      ++stats_.complex_hits;
      return c;
    } catch (const error&) {
      ++stats_.corrupt;
      warn(path(key(rz, b), "cx"));
      return std::nullopt;
    }
  }

  void store_complex(const Realization& rz, const BraidWord& b, const BimoduleComplex& c) {
    if (!enabled()) return;
    write_checked(path(key(rz, b), "cx"), dump_complex(c));
  }

  std::optional<TriGradedTable> load_table(const Realization& rz, const BraidWord& b, int cutoff) {
    if (!enabled()) return std::nullopt;
    std::string payload;
    std::string p = path(key(rz, b) + "-c" + std::to_string(cutoff), "tbl");
    if (!read_checked(p, &payload)) return std::nullopt;
    try {
      TriGradedTable t = table_parse(Json::parse(payload));
      require(t.cutoff == cutoff, errc::cache_corrupt, "cutoff mismatch");
      ++stats_.table_hits;
      return t;
    } catch (const std::exception&) {
      ++stats_.corrupt;
      warn(p);
      return std::nullopt;
    }
  }

  void store_table(const Realization& rz, const BraidWord& b, const TriGradedTable& t) {
    if (!enabled()) return;
    write_checked(path(key(rz, b) + "-c" + std::to_string(t.cutoff), "tbl"),
                  table_json(t).dump());
  }

  void note_miss() { ++stats_.misses; }

  // --- complex payloads (text, realization supplied by the caller) -------------

  static std::string dump_complex(const BimoduleComplex& c) {
    std::ostringstream os;
    os << "offsets " << c.hoch_offset2 << " " << c.cohom_offset2 << "\n";
    for (auto& [j, term] : c.terms()) {
      os << "term " << j << " " << term.count() << "\n";
      for (auto& s : term.summands) {
        os << "  " << s.shift << " " << s.word.size();
        for (auto g : s.word) os << " " << int(g);
        os << "\n";
      }
    }
    for (auto& [j, d] : c.diffs()) {
      os << "diff " << j << " " << d.entries().size() << "\n";
      for (auto& [rc, p] : d.entries()) {
        os << "  " << rc.first << " " << rc.second << " " << p.terms().size();
        for (auto& [m, coef] : p.terms()) os << " " << m << " " << coef.get_str();
        os << "\n";
      }
    }
    return os.str();
  }

  static BimoduleComplex parse_complex(const Realization& rz, const std::string& payload) {
    std::istringstream is(payload);
    BimoduleComplex c(rz);
    std::string tag;
    require(bool(is >> tag) && tag == "offsets", errc::cache_corrupt, "missing offsets");
    is >> c.hoch_offset2 >> c.cohom_offset2;
    int m = rz.nvars();
    while (is >> tag) {
      if (tag == "term") {
        int j = 0, count = 0;
        is >> j >> count;
        DirectSum ds;
        for (int k = 0; k < count; ++k) {
          Summand s;
          int len = 0;
          is >> s.shift >> len;
          require(len >= 0 && len <= 64, errc::cache_corrupt, "bad word length");
          for (int i = 0; i < len; ++i) {
            int g = 0;
            is >> g;
            s.word.push_back(static_cast<std::uint8_t>(g));
          }
          ds.summands.push_back(std::move(s));
        }
        c.set_term(j, std::move(ds));
      } else if (tag == "diff") {
        int j = 0;
        std::size_t count = 0;
        is >> j >> count;
        const DirectSum* src = c.term(j);
        const DirectSum* tgt = c.term(j + 1);
        require(src && tgt, errc::cache_corrupt, "differential without terms");
        PolyMatrix mat(m, tgt->gen_degs(), src->gen_degs(), 0);
        for (std::size_t k = 0; k < count; ++k) {
          int r = 0, col = 0;
          std::size_t nterms = 0;
          is >> r >> col >> nterms;
          MultiPoly p(m);
          for (std::size_t t = 0; t < nterms; ++t) {
            Mono mono = 0;
            std::string coef;
            is >> mono >> coef;
            p.add_term(mono, rat_parse(coef));
          }
          mat.set(r, col, p);
        }
        c.set_diff(j, std::move(mat));
      } else {
        fail(errc::cache_corrupt, "unknown record tag");
      }
      require(!is.fail(), errc::cache_corrupt, "truncated payload");
    }
    return c;
  }

 private:
  std::string path(const std::string& name, const std::string& ext) const {
    return dir_ + "/" + name + "." + ext;
  }

  static void warn(const std::string& p) {
    std::fprintf(stderr, "warning: corrupt cache entry ignored: %s\n", p.c_str());
  }

  bool read_checked(const std::string& p, std::string* payload) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return false;
    std::string header;
    if (!std::getline(in, header)) return miss_corrupt(p);
    std::ostringstream rest;
    rest << in.rdbuf();
    std::string body = rest.str();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(body));
    if (header != std::string("trihom-cache 1 ") + buf) return miss_corrupt(p);
    *payload = std::move(body);
    return true;
  }

  bool miss_corrupt(const std::string& p) {
    ++stats_.corrupt;
    warn(p);
    return false;
  }

  void write_checked(const std::string& p, const std::string& payload) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(payload));
    std::string tmp = p + ".tmp" + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) return;  // unwritable cache is non-fatal
      out << "trihom-cache 1 " << buf << "\n" << payload;
    }
    std::filesystem::rename(tmp, p, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

  std::string dir_;
  CacheStats stats_;
};

// Table computation through the cache: exact-cutoff table hit, else minimized
// complex hit + fresh slices, else full pipeline (and both layers stored).
inline TriGradedTable cached_braid_table(DiskCache& cache, const Realization& rz,
                                         const BraidWord& b, int cutoff, int jobs = 1,
                                         bool reduce = true, ReductionStats* stats = nullptr) {
  if (!cache.enabled() || !reduce) {
    TriGradedTable t = braid_table(rz, b, cutoff, jobs, reduce, stats);
    return t;
  }
  if (auto t = cache.load_table(rz, b, cutoff)) return *t;
  BimoduleComplex c = [&] {
    if (auto hit = cache.load_complex(rz, b)) return *hit;
    cache.note_miss();
    BimoduleComplex fresh = braid_complex(rz, b, true, stats);
    cache.store_complex(rz, b, fresh);
    return fresh;
  }();
  TriGradedTable t = trigraded_dims(c, cutoff, jobs);
  cache.store_table(rz, b, t);
  return t;
}

}  // namespace trihom
