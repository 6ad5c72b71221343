#pragma once

// Free graded associative algebra on the symbols u_i and the GPTW generators
// c(J\i, u_i), with graded commutators and the commutator identity toolkit.

#include <array>
#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/ring.hpp"
#include "looppres/vertex_set.hpp"

namespace looppres {

/// Bidegree (homological, multidegree) of a homogeneous element.
struct Multidegree {
  int homological = 0;
  std::array<int, kHardMaxVertices> multi{};

  int total() const {
    int t = homological;
    for (int x : multi) t += x;
    return t;
  }
  Multidegree& operator+=(const Multidegree& o) {
    homological += o.homological;
    for (std::size_t k = 0; k < multi.size(); ++k) multi[k] += o.multi[k];
    return *this;
  }
  friend bool operator==(const Multidegree&, const Multidegree&) = default;
};

/// Either the atom u_i or the GPTW generator for (J, i), i in J.
struct Symbol {
  enum class Kind : std::uint8_t { Atom, Gptw };
  Kind kind = Kind::Atom;
  VertexSet set;  ///< {i} for atoms, J for GPTW generators
  int vertex = 0;

  static Symbol atom(int i) { return Symbol{Kind::Atom, VertexSet::singleton(i), i}; }
  static Symbol gptw(VertexSet J, int i) {
    if (!J.contains(i)) throw PreconditionViolated("GPTW generator needs i in J");
    if (J.size() < 2) throw PreconditionViolated("GPTW generator needs |J| >= 2");
    return Symbol{Kind::Gptw, J, i};
  }

  bool is_atom() const { return kind == Kind::Atom; }
  /// Total degree: 1 for u_i, |J| for a GPTW generator.
  int total_degree() const { return is_atom() ? 1 : set.size(); }
  Multidegree degree() const {
    Multidegree d;
    d.homological = is_atom() ? -1 : -set.size();
    for (int v : set.elements()) d.multi[static_cast<std::size_t>(v - 1)] = 2;
    return d;
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
  /// Atoms by vertex, then GPTW generators by (|J|, J, i).
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    if (a.is_atom()) return a.vertex <=> b.vertex;
    if (a.set.size() != b.set.size()) return a.set.size() <=> b.set.size();
    if (a.set != b.set) return a.set <=> b.set;
    return a.vertex <=> b.vertex;
  }
};

using Word = std::vector<Symbol>;

inline int total_degree(const Word& w) {
  int d = 0;
  for (const auto& s : w) d += s.total_degree();
  return d;
}

inline Multidegree degree(const Word& w) {
  Multidegree d;
  for (const auto& s : w) d += s.degree();
  return d;
}

/// "u3" or "[u3,[u4,u1]]" for the GPTW generator with J = {1,3,4}, i = 1.
inline std::string to_string(const Symbol& s) {
  if (s.is_atom()) return "u" + std::to_string(s.vertex);
  std::string open, close;
  for (int v : s.set.without(s.vertex).elements()) {
    open += "[u" + std::to_string(v) + ",";
    close += "]";
  }
  return open + "u" + std::to_string(s.vertex) + close;
}

inline std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '*';
    out += to_string(w[k]);
  }
  return out;
}

/// Element of the free algebra: a finite sum of words with nonzero coefficients.
class FreePolynomial {
 public:
  using TermMap = std::map<Word, Integer>;

  explicit FreePolynomial(CoefficientRing ring = CoefficientRing::integers()) : ring_(ring) {}

  static FreePolynomial zero(CoefficientRing ring = CoefficientRing::integers()) { return FreePolynomial(ring); }
  static FreePolynomial one(CoefficientRing ring = CoefficientRing::integers()) { return word({}, 1, ring); }
  static FreePolynomial word(Word w, const Integer& c = 1, CoefficientRing ring = CoefficientRing::integers()) {
    FreePolynomial p(ring);
    p.add_term(std::move(w), c);
    return p;
  }
  static FreePolynomial symbol(const Symbol& s, CoefficientRing ring = CoefficientRing::integers()) {
    return word({s}, 1, ring);
  }
  static FreePolynomial atom(int i, CoefficientRing ring = CoefficientRing::integers()) {
    return symbol(Symbol::atom(i), ring);
  }
  static FreePolynomial gptw(VertexSet J, int i, CoefficientRing ring = CoefficientRing::integers()) {
    return symbol(Symbol::gptw(J, i), ring);
  }

  const CoefficientRing& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add_term(Word w, const Integer& c) {
    Integer& slot = terms_[w];
    slot += c;
    ring_.reduce(slot);
    if (ring_.is_zero(slot)) terms_.erase(w);
  }

  /// Total degree if homogeneous; nullopt for the zero polynomial.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      int e = looppres::total_degree(w);
      if (d && *d != e) throw NotHomogeneous("polynomial mixes total degrees " + std::to_string(*d) + " and " + std::to_string(e));
      d = e;
    }
    return d;
  }
  bool is_homogeneous() const {
    try {
      homogeneous_degree();
      return true;
    } catch (const NotHomogeneous&) {
      return false;
    }
  }

  FreePolynomial& operator+=(const FreePolynomial& o) {
    check_ring(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  FreePolynomial& operator-=(const FreePolynomial& o) {
    check_ring(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend FreePolynomial operator+(FreePolynomial a, const FreePolynomial& b) { return a += b; }
  friend FreePolynomial operator-(FreePolynomial a, const FreePolynomial& b) { return a -= b; }
  friend FreePolynomial operator-(FreePolynomial a) { return a.scaled(-1); }

  FreePolynomial scaled(const Integer& s) const {
    FreePolynomial out(ring_);
    for (const auto& [w, c] : terms_) out.add_term(w, c * s);
    return out;
  }
  friend FreePolynomial operator*(const Integer& s, const FreePolynomial& p) { return p.scaled(s); }
  friend FreePolynomial operator*(int s, const FreePolynomial& p) { return p.scaled(Integer(s)); }

  friend FreePolynomial operator*(const FreePolynomial& a, const FreePolynomial& b) {
    a.check_ring(b);
    FreePolynomial out(a.ring_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    return out;
  }

  friend bool operator==(const FreePolynomial& a, const FreePolynomial& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  /// "u1*u2 - 2*u3*[u4,u1]"; "0" for zero.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      const bool neg = sgn(c) < 0;
      Integer a = abs(c);
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      if (w.empty()) {
        out += a.get_str();
      } else {
        if (a != 1) out += a.get_str() + "*";
        out += looppres::to_string(w);
      }
      first = false;
    }
    return out;
  }

 private:
  void check_ring(const FreePolynomial& o) const {
    if (!(ring_ == o.ring_)) throw RingMismatch("free polynomials over " + ring_.name() + " and " + o.ring_.name());
  }

  CoefficientRing ring_;
  TermMap terms_;
};

inline std::string to_string(const FreePolynomial& p) { return p.to_string(); }

/// (-1)^{1 + deg p} p
inline FreePolynomial overline(const FreePolynomial& p) {
  auto d = p.homogeneous_degree();
  if (!d) return p;
  return p.scaled(sign_of(1 + *d));
}

/// [x, y] = xy - (-1)^{|x||y|} yx
inline FreePolynomial commutator(const FreePolynomial& x, const FreePolynomial& y) {
  auto dx = x.homogeneous_degree();
  auto dy = y.homogeneous_degree();
  if (!dx || !dy) return FreePolynomial::zero(x.ring());
  return x * y - (y * x).scaled(sign_of(*dx * *dy));
}

/// c(I, x) = [u_{a1}, [u_{a2}, ... [u_{ak}, x]...]] for I = {a1 < ... < ak}.
inline FreePolynomial nested_commutator(VertexSet I, const FreePolynomial& x) {
  x.homogeneous_degree();
  FreePolynomial acc = x;
  auto elems = I.elements();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) acc = commutator(FreePolynomial::atom(*it, x.ring()), acc);
  return acc;
}

/// û_I = u_{i1} ... u_{ik} in increasing order.
inline FreePolynomial hat_u(VertexSet I, CoefficientRing ring = CoefficientRing::integers()) {
  Word w;
  for (int v : I.elements()) w.push_back(Symbol::atom(v));
  return FreePolynomial::word(std::move(w), 1, ring);
}

/// Right side of û_I x = sum_{I = A ⊔ B} (-1)^{θ(A,B) + deg(x)|B|} c(A,x) û_B.
inline FreePolynomial expand_uI_x(VertexSet I, const FreePolynomial& x) {
  auto d = x.homogeneous_degree();
  FreePolynomial out(x.ring());
  if (!d) return out;
  for_each_subset(I, [&](VertexSet A) {
    VertexSet B = I - A;
    out += (nested_commutator(A, x) * hat_u(B, x.ring())).scaled(sign_of(koszul_theta(A, B) + *d * B.size()));
  });
  return out;
}

/// Right side of the expansion of û_I u_j: commutator terms with max(A) > j
/// plus (-1)^{|I_{>j}|} times û_{I⊔j}, or û_{I<j} u_j² û_{I>j} when j ∈ I.
inline FreePolynomial expand_uI_uj(VertexSet I, int j, CoefficientRing ring = CoefficientRing::integers()) {
  FreePolynomial uj = FreePolynomial::atom(j, ring);
  FreePolynomial out(ring);
  for_each_subset(I, [&](VertexSet A) {
    if (A.max() <= j) return;
    VertexSet B = I - A;
    out += (nested_commutator(A, uj) * hat_u(B, ring)).scaled(sign_of(koszul_theta(A, B) + B.size()));
  });
  FreePolynomial tail = I.contains(j) ? hat_u(I.below(j), ring) * uj * uj * hat_u(I.above(j), ring)
                                      : hat_u(I.with(j), ring);
  out += tail.scaled(sign_of(I.count_above(j)));
  return out;
}

/// Right side of c(I,[x,y]) = sum_{I = A ⊔ B} (-1)^{θ(A,B) + deg(x)|B|} [c(A,x), c(B,y)].
inline FreePolynomial expand_c_of_bracket(VertexSet I, const FreePolynomial& x, const FreePolynomial& y) {
  auto dx = x.homogeneous_degree();
  y.homogeneous_degree();
  FreePolynomial out(x.ring());
  if (!dx) return out;
  for_each_subset(I, [&](VertexSet A) {
    VertexSet B = I - A;
    out += commutator(nested_commutator(A, x), nested_commutator(B, y)).scaled(sign_of(koszul_theta(A, B) + *dx * B.size()));
  });
  return out;
}

/// Right side of the rearrangement of c(J \ ij, [u_i, u_j]) for i < j, J_{>j} ≠ ∅:
///   (-1)^{|J>j|} c(J\i, u_i) - (-1)^{|J>i|} c(J\j, u_j)
///   + sum_{J\ij = A ⊔ B, A_{>i}, B_{>j} ≠ ∅} (-1)^{θ(A,B)+|B|} [c(A,u_i), c(B,u_j)].
inline FreePolynomial rearrangement_identity_rhs(VertexSet J, int i, int j,
                                                 CoefficientRing ring = CoefficientRing::integers()) {
  if (!(i < j) || !J.contains(i) || !J.contains(j))
    throw PreconditionViolated("rearrangement identity needs i < j with i, j in J");
  if (J.count_above(j) == 0) throw PreconditionViolated("rearrangement identity needs J_{>j} nonempty");
  FreePolynomial ui = FreePolynomial::atom(i, ring);
  FreePolynomial uj = FreePolynomial::atom(j, ring);
  FreePolynomial out = nested_commutator(J.without(i), ui).scaled(sign_of(J.count_above(j))) -
                       nested_commutator(J.without(j), uj).scaled(sign_of(J.count_above(i)));
  VertexSet rest = J.without(i).without(j);
  for_each_subset(rest, [&](VertexSet A) {
    VertexSet B = rest - A;
    if (A.count_above(i) == 0 || B.count_above(j) == 0) return;
    out += commutator(nested_commutator(A, ui), nested_commutator(B, uj)).scaled(sign_of(koszul_theta(A, B) + B.size()));
  });
  return out;
}

/// Left side c(J \ ij, [u_i, u_j]).
inline FreePolynomial rearrangement_identity_lhs(VertexSet J, int i, int j,
                                                 CoefficientRing ring = CoefficientRing::integers()) {
  return nested_commutator(J.without(i).without(j),
                           commutator(FreePolynomial::atom(i, ring), FreePolynomial::atom(j, ring)));
}

namespace detail {

class SymbolParser {
 public:
  explicit SymbolParser(const std::string& text) : s_(text) {}

  Symbol parse_symbol() {
    skip();
    if (peek() == 'u') {
      int v = parse_atom();
      return Symbol::atom(v);
    }
    // [u_a,[u_b, ... u_i]]
    VertexSet rest;
    int depth = 0;
    while (peek() == '[') {
      ++pos_;
      int v = parse_atom();
      if (rest.contains(v)) fail("repeated vertex");
      rest = rest.with(v);
      expect(',');
      ++depth;
      skip();
    }
    if (depth == 0) fail("expected a symbol");
    int i = parse_atom();
    for (int k = 0; k < depth; ++k) expect(']');
    if (rest.contains(i)) fail("repeated vertex");
    return Symbol::gptw(rest.with(i), i);
  }

  Word parse_word() {
    Word w;
    skip();
    if (peek() == '1') {
      ++pos_;
      return w;
    }
    w.push_back(parse_symbol());
    skip();
    while (peek() == '*') {
      ++pos_;
      w.push_back(parse_symbol());
      skip();
    }
    return w;
  }

  FreePolynomial parse_polynomial(const CoefficientRing& ring) {
    FreePolynomial p(ring);
    skip();
    if (peek() == '0' && pos_ + 1 == s_.size()) {
      ++pos_;
      return p;
    }
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    while (true) {
      skip();
      Integer c = 1;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        c = Integer(s_.substr(start, pos_ - start));
        skip();
        if (peek() == '*') {
          ++pos_;
          p.add_term(parse_word(), sign * c);
        } else {
          p.add_term({}, sign * c);
        }
      } else {
        p.add_term(parse_word(), sign * c);
      }
      skip();
      if (pos_ == s_.size()) break;
      if (peek() == '+') sign = 1;
      else if (peek() == '-') sign = -1;
      else fail("expected + or -");
      ++pos_;
    }
    return p;
  }

  bool at_end() {
    skip();
    return pos_ == s_.size();
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char ch) {
    skip();
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  int parse_atom() {
    skip();
    if (peek() != 'u') fail("expected u<i>");
    ++pos_;
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a vertex number");
    return std::stoi(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Inverse of to_string(Symbol).
inline Symbol parse_symbol(const std::string& text) {
  detail::SymbolParser p(text);
  Symbol s = p.parse_symbol();
  if (!p.at_end()) throw ParseError("trailing input in '" + text + "'");
  return s;
}

/// Inverse of FreePolynomial::to_string.
inline FreePolynomial parse_polynomial(const std::string& text, CoefficientRing ring = CoefficientRing::integers()) {
  detail::SymbolParser p(text);
  FreePolynomial out = p.parse_polynomial(ring);
  if (!p.at_end()) throw ParseError("trailing input in '" + text + "'");
  return out;
}

}  // namespace looppres
