#pragma once
// Coxeter systems of crystallographic type, their integral Cartan realizations
// over the rationals, braid words, and Demazure operators.
//
// Conventions.  Generators are 0-based indices; a braid-word letter +-(g+1)
// means generator g with crossing sign +-1.  The realization stores the Cartan
// pairing a(i,j) = alpha_j(e_i) with a(i,i) = 2; the reflection s_i acts on the
// root coordinates by s_i(alpha_j) = alpha_j - a(i,j) alpha_i and on V by
// s_i(x) = x - alpha_i(x) e_i.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "trihom/poly.hpp"
#include "trihom/rational.hpp"
#include "trihom/util.hpp"

namespace trihom {

class CoxeterSystem {
 public:
  CoxeterSystem() = default;

  static CoxeterSystem from_matrix(const std::vector<std::vector<int>>& m) {
    CoxeterSystem sys;
    sys.cox_ = m;
    sys.rank_ = (int)m.size();
    sys.validate();
    sys.type_ = sys.classify();
    return sys;
  }

  // Accepted tags: A0, A1, ..., B2, B3, ..., D4, ..., G2, I2(2), I2(3),
  // I2(4), I2(6), and products joined with 'x' (e.g. A1xA1).
  static CoxeterSystem from_type(const std::string& tag) {
    std::vector<std::vector<int>> m;
    std::size_t pos = 0;
    bool first = true;
    while (pos < tag.size()) {
      if (!first) {
        require(tag[pos] == 'x', errc::parse_error, "bad type tag '" + tag + "'");
        ++pos;
      }
      first = false;
      std::size_t next = tag.find('x', pos);
      std::string part = tag.substr(pos, next == std::string::npos ? next : next - pos);
      pos = next == std::string::npos ? tag.size() : next;
      append_component(m, part);
    }
    require(!first || tag == "A0", errc::parse_error, "empty type tag");
    if (tag == "A0") m.clear();
    return from_matrix(m);
  }

  int rank() const { return rank_; }
  const std::string& type() const { return type_; }
  int m_entry(int s, int t) const { return s == t ? 1 : cox_[s][t]; }
  const std::vector<std::vector<int>>& matrix() const { return cox_; }

  bool is_type_a() const {
    if (rank_ == 0) return true;
    for (int i = 0; i < rank_; ++i)
      for (int j = i + 1; j < rank_; ++j)
        if (cox_[i][j] != (j == i + 1 ? 3 : 2)) return false;
    return true;
  }

  // Subsystem on generators 0..k-1.
  CoxeterSystem prefix(int k) const {
    require(k >= 0 && k <= rank_, errc::generator_out_of_range, "prefix rank");
    std::vector<std::vector<int>> m(k, std::vector<int>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m[i][j] = i == j ? 1 : cox_[i][j];
    return from_matrix(m);
  }

  friend bool operator==(const CoxeterSystem& a, const CoxeterSystem& b) {
    return a.cox_ == b.cox_;
  }

 private:
  void validate() const {
    for (int i = 0; i < rank_; ++i) {
      require((int)cox_[i].size() == rank_, errc::shape_mismatch, "coxeter matrix not square");
      require(cox_[i][i] == 1, errc::bad_diagonal, "coxeter matrix diagonal must be 1");
      for (int j = 0; j < rank_; ++j) {
        require(cox_[i][j] == cox_[j][i], errc::non_symmetric, "coxeter matrix not symmetric");
        if (i != j) {
          int m = cox_[i][j];
          require(m == 2 || m == 3 || m == 4 || m == 6, errc::unsupported_type,
                  "bond order " + std::to_string(m) + " is not crystallographic");
        }
      }
    }
  }

  static void append_component(std::vector<std::vector<int>>& m, const std::string& part) {
    char family = part.empty() ? '?' : part[0];
    int n = 0;
    int bond = 0;
    if (family == 'I') {
      // I2(k)
      require(part.size() >= 5 && part.substr(0, 3) == "I2(" && part.back() == ')',
              errc::parse_error, "bad dihedral tag '" + part + "'");
      bond = std::stoi(part.substr(3, part.size() - 4));
      n = 2;
    } else {
      require(part.size() >= 2, errc::parse_error, "bad type tag '" + part + "'");
      n = std::stoi(part.substr(1));
    }
    int base = (int)m.size();
    if (family == 'A' && n == 0) return;
    require(n >= 1, errc::parse_error, "bad rank in '" + part + "'");
    int total = base + n;
    for (auto& row : m) row.resize(total, 2);
    for (int i = base; i < total; ++i) {
      std::vector<int> row(total, 2);
      row[i] = 1;
      m.push_back(row);
    }
    auto set_bond = [&](int i, int j, int v) {
      m[base + i][base + j] = v;
      m[base + j][base + i] = v;
    };
    switch (family) {
      case 'A':
        for (int i = 0; i + 1 < n; ++i) set_bond(i, i + 1, 3);
        break;
      case 'B':
        require(n >= 2, errc::parse_error, "B-type needs rank >= 2");
        for (int i = 0; i + 1 < n; ++i) set_bond(i, i + 1, 3);
        set_bond(n - 2, n - 1, 4);
        break;
      case 'D':
        require(n >= 4, errc::parse_error, "D-type needs rank >= 4");
        for (int i = 0; i + 1 < n - 1; ++i) set_bond(i, i + 1, 3);
        set_bond(n - 3, n - 1, 3);
        break;
      case 'G':
        require(n == 2, errc::parse_error, "G-type has rank 2");
        set_bond(0, 1, 6);
        break;
      case 'I':
        require(bond == 2 || bond == 3 || bond == 4 || bond == 6, errc::unsupported_type,
                "dihedral order " + std::to_string(bond) + " unsupported by the default field");
        set_bond(0, 1, bond);
        break;
      default:
        fail(errc::parse_error, "unknown family '" + part + "'");
    }
  }

  std::string classify() const {
    if (rank_ == 0) return "A0";
    // Connected components of the bond graph.
    std::vector<int> comp(rank_, -1);
    int ncomp = 0;
    for (int i = 0; i < rank_; ++i) {
      if (comp[i] >= 0) continue;
      std::vector<int> stack{i};
      comp[i] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int j = 0; j < rank_; ++j)
          if (j != v && cox_[v][j] >= 3 && comp[j] < 0) {
            comp[j] = ncomp;
            stack.push_back(j);
          }
      }
      ++ncomp;
    }
    std::vector<std::string> names;
    for (int c = 0; c < ncomp; ++c) {
      std::vector<int> nodes;
      for (int i = 0; i < rank_; ++i)
        if (comp[i] == c) nodes.push_back(i);
      names.push_back(classify_component(nodes));
    }
    std::sort(names.begin(), names.end());
    std::string out;
    for (auto& s : names) {
      if (!out.empty()) out += "x";
      out += s;
    }
    return out;
  }

  std::string classify_component(const std::vector<int>& nodes) const {
    int n = (int)nodes.size();
    if (n == 1) return "A1";
    std::vector<int> deg(n, 0);
    int n4 = 0, n6 = 0, edges = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        int m = cox_[nodes[a]][nodes[b]];
        if (m >= 3) {
          ++edges;
          ++deg[a];
          ++deg[b];
          if (m == 4) ++n4;
          if (m == 6) ++n6;
        }
      }
    require(edges == n - 1, errc::unsupported_type, "bond graph has a cycle");
    int maxdeg = *std::max_element(deg.begin(), deg.end());
    if (n == 2) {
      if (n6) return "G2";
      if (n4) return "B2";
      return "A2";
    }
    require(n6 == 0, errc::unsupported_type, "order-6 bond only supported in rank 2");
    if (maxdeg >= 3) {
      require(maxdeg == 3 && n4 == 0, errc::unsupported_type, "unsupported branching");
      int nbranch = (int)std::count(deg.begin(), deg.end(), 3);
      require(nbranch == 1 && n >= 4, errc::unsupported_type, "unsupported branching");
      // Require the branch point to carry two leaves (D-shape).
      return "D" + std::to_string(n);
    }
    if (n4 == 0) return "A" + std::to_string(n);
    require(n4 == 1, errc::unsupported_type, "more than one order-4 bond");
    // Path with one order-4 bond at an end.
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (cox_[nodes[a]][nodes[b]] == 4)
          require(deg[a] == 1 || deg[b] == 1, errc::unsupported_type,
                  "order-4 bond must sit at the end of the path");
    return "B" + std::to_string(n);
  }

  int rank_ = 0;
  std::vector<std::vector<int>> cox_;
  std::string type_;
};

// Integral Cartan realization over Q.  One polynomial variable per generator.
class Realization {
 public:
  Realization() = default;

  explicit Realization(const CoxeterSystem& sys) : sys_(sys) {
    int n = sys.rank();
    cartan_.assign(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
      cartan_[i][i] = 2;
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        switch (sys.m_entry(i, j)) {
          case 2: cartan_[i][j] = 0; break;
          case 3: cartan_[i][j] = -1; break;
          case 4: cartan_[i][j] = asym(i, j, sys) ? -2 : -1; break;
          case 6: cartan_[i][j] = asym(i, j, sys) ? -3 : -1; break;
          default: fail(errc::unsupported_type, "non-crystallographic bond");
        }
      }
    }
    build_images();
  }

  const CoxeterSystem& system() const { return sys_; }
  int nvars() const { return sys_.rank(); }

  // alpha_j(e_i).
  const Rat& cartan(int i, int j) const { return cartan_[i][j]; }

  MultiPoly alpha(int s) const { return MultiPoly::variable(nvars(), s); }

  // Action of generator s on a polynomial in the root coordinates.
  MultiPoly act(int s, const MultiPoly& f) const {
    check_gen(s);
    return f.substitute(images_[s]);
  }

  // Matrix of s on V^* in the alpha-basis; column j holds the coordinates of
  // s(alpha_j).
  std::vector<std::vector<Rat>> action_matrix(int s) const {
    check_gen(s);
    int n = nvars();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (int j = 0; j < n; ++j) {
      m[j][j] = 1;
      m[s][j] -= cartan_[s][j];
    }
    return m;
  }

  // f(e_s) for a linear form f.
  Rat pair_e(const MultiPoly& f, int s) const {
    check_gen(s);
    require(f.is_zero() || f.is_homogeneous(1), errc::grading_violation,
            "pairing expects a linear form");
    Rat v(0);
    for (auto& [m, c] : f.terms())
      for (int j = 0; j < nvars(); ++j)
        if (mono_exp(m, j) == 1) v += c * cartan_[s][j];
    return v;
  }

  // Demazure operator: (f - s(f)) / alpha_s, exact by construction.
  MultiPoly demazure(int s, const MultiPoly& f) const {
    MultiPoly num = f - act(s, f);
    MultiPoly out(nvars());
    for (auto& [m, c] : num.terms()) {
      require(mono_exp(m, s) >= 1, errc::inexact_division, "demazure numerator not divisible");
      out.add_term(mono_div(m, mono_var(s)), c);
    }
    return out;
  }

  // x_r = a + c*alpha_s with a s-invariant of degree 1 and c scalar:
  // a = x_r - (a(s,r)/2) alpha_s,  c = a(s,r)/2.
  Rat half_cartan(int s, int r) const { return cartan_[s][r] / 2; }
  MultiPoly invariant_part(int s, int r) const {
    MultiPoly a = MultiPoly::variable(nvars(), r);
    a += MultiPoly::variable(nvars(), s, -half_cartan(s, r));
    return a;
  }

  // Restriction to the parabolic on generators 0..k-1 (its own realization).
  Realization prefix(int k) const { return Realization(sys_.prefix(k)); }

  friend bool operator==(const Realization& a, const Realization& b) {
    return a.sys_ == b.sys_ && a.cartan_ == b.cartan_;
  }

 private:
  // Orientation of asymmetric Cartan pairs: the larger |entry| goes to the
  // lexicographically later row (coroot of the short root).
  static bool asym(int i, int j, const CoxeterSystem&) { return i > j; }

  void check_gen(int s) const {
    require(s >= 0 && s < nvars(), errc::generator_out_of_range,
            "generator " + std::to_string(s));
  }

  void build_images() {
    int n = nvars();
    images_.resize(n);
    for (int s = 0; s < n; ++s) {
      images_[s].clear();
      for (int j = 0; j < n; ++j) {
        MultiPoly img = MultiPoly::variable(n, j);
        img += MultiPoly::variable(n, s, -cartan_[s][j]);
        images_[s].push_back(img);
      }
    }
  }

  CoxeterSystem sys_;
  std::vector<std::vector<Rat>> cartan_;
  std::vector<std::vector<MultiPoly>> images_;  // images_[s][j] = s(alpha_j)
};

// A braid word: letters +-(g+1), generator g with a crossing sign.
struct BraidWord {
  std::vector<int> letters;

  BraidWord() = default;
  explicit BraidWord(std::vector<int> ls) : letters(std::move(ls)) {}

  static BraidWord parse(const std::string& text, int rank) {
    BraidWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
      int v = 0;
      try {
        std::size_t used = 0;
        v = std::stoi(tok, &used);
        require(used == tok.size(), errc::parse_error, "bad braid letter '" + tok + "'");
      } catch (const error&) {
        throw;
      } catch (...) {
        fail(errc::parse_error, "bad braid letter '" + tok + "'");
      }
      require(v != 0, errc::parse_error, "braid letter 0");
      require(std::abs(v) <= rank, errc::generator_out_of_range,
              "letter " + tok + " exceeds rank " + std::to_string(rank));
      w.letters.push_back(v);
    }
    return w;
  }

  int length() const { return (int)letters.size(); }

  // Exponent sum (the length homomorphism).
  int exponent_sum() const {
    int l = 0;
    for (int v : letters) l += v > 0 ? 1 : -1;
    return l;
  }

  int generator(int pos) const { return std::abs(letters[pos]) - 1; }
  int sign(int pos) const { return letters[pos] > 0 ? 1 : -1; }

  BraidWord inverse() const {
    BraidWord w;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back(-*it);
    return w;
  }

  BraidWord mirror() const {
    BraidWord w;
    for (int v : letters) w.letters.push_back(-v);
    return w;
  }

  BraidWord rotated(int k) const {
    BraidWord w = *this;
    if (letters.empty()) return w;
    k = ((k % length()) + length()) % length();
    std::rotate(w.letters.begin(), w.letters.begin() + k, w.letters.end());
    return w;
  }

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    BraidWord w = a;
    w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
    return w;
  }

  // The same word viewed one generator up, with a crossing on the new top
  // generator appended (rank is the rank of the enlarged system).
  BraidWord stabilized(int rank, int crossing_sign) const {
    BraidWord w = *this;
    w.letters.push_back(crossing_sign > 0 ? rank : -rank);
    return w;
  }

  std::string str() const {
    std::string s;
    for (int v : letters) {
      if (!s.empty()) s += " ";
      s += std::to_string(v);
    }
    return s;
  }

  friend bool operator==(const BraidWord& a, const BraidWord& b) {
    return a.letters == b.letters;
  }
  friend bool operator<(const BraidWord& a, const BraidWord& b) {
    return a.letters < b.letters;
  }
};

}  // namespace trihom
