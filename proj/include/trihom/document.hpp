#pragma once
// Structured result documents: canonical JSON with a stable field order,
// exact rational encodings (integers for doubled exponents, strings for
// rationals), and a convention block that pins every sign and shift choice
// the numbers depend on.  Serialisation is byte-reproducible for a fixed
// configuration; wall-clock timing is deliberately kept out of it.

#include <cstdio>
#include <string>
#include <utility>

#include "json.hpp"
#include "trihom/invariants.hpp"

namespace trihom {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json conventions_json() {
  Json c;
  c["alpha_degree"] = 1;
  c["reflection"] = "s(x) = x - alpha_s(x) e_s on the defining variables; alpha_s = x_s";
  c["shift"] = "M<n>_k = M_{n+k}; <1> raises every generator degree by one";
  c["differential"] =
      "differentials are homogeneous of internal degree zero; the tensor "
      "differential carries the sign (-1)^i on id (x) d";
  c["table_keys"] =
      "(i2, j2, d): doubled Hochschild index, doubled cohomological degree, "
      "internal degree; unnormalised tables have even i2 and j2";
  c["normalization"] =
      "half-normalised tables shift both doubled axes down by "
      "w = (strands - 1) + writhe";
  c["trace"] =
      "entry (i2, j2, d) of dimension n adds (-1)^{j2/2} n q^{-d} t^{i2/2}; "
      "series exponents are stored doubled as (-2d, i2)";
  c["euler"] =
      "entry adds n x^{2(i2-w)-2d} y^{w-i2} z^{w-j2} with x, y, z the "
      "half-integer powers t1^{1/2}, t2^{1/2}, t3^{1/2}; Y sets z = i; "
      "window bounds apply to the x exponent";
  c["skein"] = "x^{-1} y Y(-) + x y^{-1} Y(+) = i (x^{-1} - x) Y(0)";
  return c;
}

inline std::string convention_hash() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                (unsigned long long)fnv1a(conventions_json().dump()));
  return std::string(buf);
}

// --- exact scalar encodings ---------------------------------------------------

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline Json gauss_json(const GaussRat& g) { return Json::array({rat_str(g.re), rat_str(g.im)}); }

inline GaussRat gauss_parse(const Json& j) {
  return GaussRat(rat_parse(j.at(0).get<std::string>()), rat_parse(j.at(1).get<std::string>()));
}

// --- tables and series ----------------------------------------------------------

inline Json table_json(const TriGradedTable& t) {
  Json j;
  j["cutoff"] = t.cutoff;
  j["nvars"] = t.nvars;
  j["hoch_top2"] = t.hoch_top2;
  Json entries = Json::array();
  for (auto& [k, v] : t.dims) entries.push_back(Json::array({k[0], k[1], k[2], v}));
  j["entries"] = std::move(entries);
  return j;
}

inline TriGradedTable table_parse(const Json& j) {
  TriGradedTable t;
  t.cutoff = j.at("cutoff").get<int>();
  t.nvars = j.at("nvars").get<int>();
  t.hoch_top2 = j.value("hoch_top2", 0);
  for (auto& e : j.at("entries"))
    t.add(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<long long>());
  return t;
}

inline Json series_json(const WindowedSeries& s) {
  Json j;
  j["window"] = Json::array({s.lo() <= -WindowedSeries::kInf ? Json(nullptr) : Json(s.lo()),
                             s.hi() >= WindowedSeries::kInf ? Json(nullptr) : Json(s.hi())});
  Json terms = Json::array();
  for (auto& [e, c] : s.terms())
    terms.push_back(Json::array({e[0], e[1], e[2], rat_str(c.re), rat_str(c.im)}));
  j["terms"] = std::move(terms);
  return j;
}

inline WindowedSeries series_parse(const Json& j) {
  const Json& w = j.at("window");
  int lo = w.at(0).is_null() ? -WindowedSeries::kInf : w.at(0).get<int>();
  int hi = w.at(1).is_null() ? WindowedSeries::kInf : w.at(1).get<int>();
  WindowedSeries s(lo, hi);
  for (auto& e : j.at("terms"))
    s.add_term({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()},
               GaussRat(rat_parse(e.at(3).get<std::string>()), rat_parse(e.at(4).get<std::string>())));
  return s;
}

inline Json hilbert_json(const std::map<std::pair<int, int>, HilbertNumerator>& h, int margin) {
  Json j;
  j["margin"] = margin;
  Json rows = Json::array();
  for (auto& [ij, num] : h) {
    Json row;
    row["i2"] = ij.first;
    row["j2"] = ij.second;
    Json coeffs = Json::array();
    for (auto& [e, c] : num.coeffs) coeffs.push_back(Json::array({e, c}));
    row["numerator"] = std::move(coeffs);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

// --- whole documents -------------------------------------------------------------

inline std::string serialize_document(const Json& doc) { return doc.dump(2) + "\n"; }

inline Json parse_document(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const std::exception& e) {
    fail(errc::parse_error, std::string("bad document: ") + e.what());
  }
  require(doc.contains("schema_version") && doc["schema_version"].is_number_integer() &&
              doc["schema_version"].get<int>() == kSchemaVersion,
          errc::parse_error, "unsupported schema version");
  return doc;
}

inline Json document_skeleton(const std::string& kind) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  return doc;
}

}  // namespace trihom
