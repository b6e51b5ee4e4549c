// Command-line surface: computes trigraded tables and the derived link
// invariants for braid closures, and runs the structural checks.
//
// Exit codes: 0 success / check passed, 1 check failed, 2 bad input or
// configuration, 3 unsupported Coxeter type, 4 unstable rational fit or an
// empty comparison window (partial output is still printed).

#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "trihom/trihom.hpp"

namespace {

using namespace trihom;

int code_for(errc c) {
  switch (c) {
    case errc::unsupported_type:
    case errc::unsupported_field:
      return 3;
    case errc::fit_unstable:
    case errc::window_too_small:
      return 4;
    default:
      return 2;
  }
}

Realization make_realization(const std::string& type, int strands) {
  if (type == "A") {
    require(strands >= 1, errc::parse_error, "--type A needs --strands >= 1");
    return Realization(CoxeterSystem::from_type("A" + std::to_string(strands - 1)));
  }
  return Realization(CoxeterSystem::from_type(type));
}

std::string window_str(int lo, int hi) {
  std::string a = lo <= -WindowedSeries::kInf ? "-inf" : std::to_string(lo);
  std::string b = hi >= WindowedSeries::kInf ? "inf" : std::to_string(hi);
  return "[" + a + ", " + b + "]";
}

std::string series_str(const WindowedSeries& s, bool three_vars) {
  std::string out;
  for (auto& [e, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (e[0]) out += " x^" + std::to_string(e[0]);
    if (e[1]) out += " y^" + std::to_string(e[1]);
    if (three_vars && e[2]) out += " z^" + std::to_string(e[2]);
  }
  if (out.empty()) out = "0";
  return out + "   exact on " + window_str(s.lo(), s.hi());
}

// Trace exponents are stored doubled; both q and t exponents are even here.
std::string trace_series_str(const WindowedSeries& s) {
  std::string out;
  for (auto& [e, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c) + ")";
    if (e[0]) out += " q^" + std::to_string(e[0] / 2);
    if (e[1]) out += " t^" + std::to_string(e[1] / 2);
  }
  if (out.empty()) out = "0";
  int lo = s.lo() <= -WindowedSeries::kInf ? s.lo() : s.lo() / 2;
  int hi = s.hi() >= WindowedSeries::kInf ? s.hi() : s.hi() / 2;
  return out + "   exact on " + window_str(lo, hi);
}

void print_table_text(const TriGradedTable& t, const std::string& name) {
  std::cout << name << " (i2, j2, d) -> dim   [cutoff " << t.cutoff << "]\n";
  for (auto& [k, v] : t.dims)
    std::cout << "  (" << k[0] << ", " << k[1] << ", " << k[2] << ") " << v << "\n";
  if (t.dims.empty()) std::cout << "  (empty)\n";
}

struct Opts {
  std::string type = "A";
  int strands = 0;
  std::string braid;
  std::string b, bp;
  int cutoff = 12;
  int margin = 3;
  int jobs = 1;
  int gen = 1;
  std::string sign = "+";
  bool no_minimize = false;
  std::string cache_dir;
  std::string format = "text";
};

void add_common(CLI::App* cmd, Opts& o) {
  cmd->add_option("--type", o.type, "Coxeter type tag (A with --strands, or A2, B2, G2, I2(6), A1xA1, ...)");
  cmd->add_option("--strands", o.strands, "braid-group strand count (type A)");
  cmd->add_option("--cutoff", o.cutoff, "largest internal degree computed")->check(CLI::NonNegativeNumber);
  cmd->add_option("--margin", o.margin, "extra degrees checked by the rational fit")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", o.jobs, "parallel degree slices")->check(CLI::PositiveNumber);
  cmd->add_flag("--no-minimize", o.no_minimize, "skip Gaussian minimization of the complex");
  cmd->add_option("--cache", o.cache_dir, "cache directory (default: $TRIHOM_CACHE_DIR)");
  cmd->add_option("--format", o.format, "output format: text | json")
      ->check(CLI::IsMember({"text", "json"}));
}

Json input_echo(const Opts& o, const Realization& rz) {
  Json in;
  in["type"] = rz.system().type();
  if (o.type == "A") in["strands"] = o.strands;
  in["cutoff"] = o.cutoff;
  in["margin"] = o.margin;
  in["minimize"] = !o.no_minimize;
  return in;
}

int run_invariant(const Opts& o) {
  Realization rz = make_realization(o.type, o.strands);
  BraidWord word = BraidWord::parse(o.braid, rz.nvars());
  DiskCache cache(o.cache_dir);

  ReductionStats stats;
  TriGradedTable table =
      cached_braid_table(cache, rz, word, o.cutoff, o.jobs, !o.no_minimize, &stats);
  int w = weight(rz, word);
  bool chain = rz.system().is_type_a();

  Json doc = document_skeleton("invariant");
  Json in = input_echo(o, rz);
  in["braid"] = word.str();
  doc["input"] = std::move(in);
  doc["conventions"] = conventions_json();
  doc["table"] = table_json(table);
  doc["normalized_table"] = table_json(normalized_table(table, w));

  bool fit_ok = true;
  std::string fit_error;
  try {
    Json h = hilbert_json(hh_hilbert(table, o.margin), o.margin);
    h["cutoff"] = table.cutoff;
    doc["hilbert"] = std::move(h);
  } catch (const error& e) {
    if (e.code() != errc::fit_unstable) throw;
    fit_ok = false;
    fit_error = e.what();
    doc["hilbert"] = Json{{"stable", false}, {"error", fit_error}};
  }

  doc["trace"] = series_json(trace_series(table));
  if (chain) {
    Json euler;
    euler["supported"] = true;
    euler["weight"] = w;
    euler["x"] = series_json(x_series(table, w));
    euler["y"] = series_json(y_series(table, w));
    doc["euler"] = std::move(euler);
  } else {
    doc["euler"] = Json{{"supported", false},
                        {"reason", "Euler dictionaries need a chain (braid-group) type"}};
  }
  doc["telemetry"] = Json{{"table_entries", table.dims.size()}};

  if (cache.enabled())
    std::cerr << "cache: " << cache.stats().table_hits << " table hits, "
              << cache.stats().complex_hits << " complex hits, " << cache.stats().misses
              << " misses, " << cache.stats().corrupt << " corrupt\n";
  if (stats.peak_summands)
    std::cerr << "complex: peak " << stats.peak_summands << " summands, final "
              << stats.final_summands << "\n";

  if (o.format == "json") {
    std::cout << serialize_document(doc);
  } else {
    std::cout << "type " << rz.system().type() << "  braid \"" << word.str() << "\"  cutoff "
              << o.cutoff << "\n";
    print_table_text(table, "table");
    std::cout << "trace = " << trace_series_str(series_parse(doc["trace"])) << "\n";
    if (chain) {
      WindowedSeries x = x_series(table, w), y = y_series(table, w);
      std::cout << "X = " << series_str(x, true) << "\n";
      std::cout << "Y = " << series_str(y, false) << "\n";
    } else {
      std::cout << "X, Y: unsupported for this type (trace only)\n";
    }
    if (!fit_ok) std::cout << "hilbert fit unstable: " << fit_error << "\n";
  }
  return fit_ok ? 0 : 4;
}

int run_check(const Opts& o, const std::string& which) {
  Realization rz = make_realization(o.type, o.strands);
  CheckReport r;
  Json params;
  if (which == "conj") {
    BraidWord b = BraidWord::parse(o.b, rz.nvars());
    BraidWord bp = BraidWord::parse(o.bp, rz.nvars());
    params["b"] = b.str();
    params["bp"] = bp.str();
    r = verify_conjugation(rz, b, bp, o.cutoff, o.jobs);
  } else if (which == "stab") {
    BraidWord b = BraidWord::parse(o.braid, rz.nvars());
    require(o.sign == "+" || o.sign == "-", errc::parse_error, "--sign must be + or -");
    params["braid"] = b.str();
    params["sign"] = o.sign;
    r = verify_stabilization(rz, b, o.sign == "+" ? +1 : -1, o.cutoff, o.jobs);
  } else if (which == "parabolic") {
    require(rz.nvars() >= 1, errc::unsupported_type, "parabolic check needs rank >= 1");
    BraidWord b = BraidWord::parse(o.braid, rz.nvars() - 1);
    params["braid"] = b.str();
    r = verify_parabolic(rz, b, o.cutoff, o.jobs);
  } else if (which == "skein") {
    BraidWord b = BraidWord::parse(o.b, rz.nvars());
    BraidWord bp = BraidWord::parse(o.bp, rz.nvars());
    params["b"] = b.str();
    params["bp"] = bp.str();
    params["r"] = o.gen;
    r = verify_skein(rz, b, bp, o.gen, o.cutoff, o.jobs);
  } else if (which == "decat") {
    BraidWord b = BraidWord::parse(o.braid, rz.nvars());
    params["braid"] = b.str();
    r = verify_decat(rz, b);
    if (r.pass && rz.system().is_type_a()) {
      CheckReport tr = compare_trace_with_oracle(rz, b, o.cutoff, o.jobs);
      r.pass = tr.pass;
      r.detail += "; " + tr.detail;
    }
  } else {
    fail(errc::parse_error, "unknown check '" + which + "'");
  }

  Json doc = document_skeleton("check");
  doc["check"] = which;
  Json in = input_echo(o, rz);
  doc["input"] = std::move(in);
  doc["parameters"] = std::move(params);
  doc["conventions"] = conventions_json();
  doc["result"] = Json{{"pass", r.pass}, {"detail", r.detail}};

  if (o.format == "json")
    std::cout << serialize_document(doc);
  else
    std::cout << "check " << which << ": " << (r.pass ? "PASS" : "FAIL") << " — " << r.detail
              << "\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact triply graded homology of braid closures"};
  app.require_subcommand(1);

  Opts o;
  if (const char* env = std::getenv("TRIHOM_CACHE_DIR")) o.cache_dir = env;

  CLI::App* inv = app.add_subcommand("invariant", "compute tables and link invariants");
  add_common(inv, o);
  inv->add_option("--braid", o.braid, "braid word, e.g. \"1 -2 1\"");

  CLI::App* chk = app.add_subcommand("check", "verify a structural identity");
  std::string which;
  chk->add_option("which", which, "conj | stab | parabolic | skein | decat")->required();
  add_common(chk, o);
  chk->add_option("--braid", o.braid, "braid word (stab, parabolic, decat)");
  chk->add_option("--b", o.b, "left word (conj, skein)");
  chk->add_option("--bp", o.bp, "right word (conj, skein)");
  chk->add_option("--r", o.gen, "crossing generator (skein)");
  chk->add_option("--sign", o.sign, "stabilisation sign: + or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (inv->parsed()) return run_invariant(o);
    return run_check(o, which);
  } catch (const trihom::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
