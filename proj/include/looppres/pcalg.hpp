#pragma once

// The quadratic algebra k[K]^! = T(u_1..u_m) / (u_i^2, u_i u_j + u_j u_i for edges {i,j})
// with a canonical normal form, used as the verification target for
// everything built in the free algebra.

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/freealg.hpp"
#include "looppres/ring.hpp"
#include "looppres/simplicial.hpp"
#include "looppres/vertex_set.hpp"

namespace looppres {

/// Word in the letters u_1..u_m; each char holds a vertex number.
using PCWord = std::string;

inline PCWord make_pcword(const std::vector<int>& letters) {
  PCWord w;
  for (int v : letters) w.push_back(static_cast<char>(v));
  return w;
}

inline std::string pcword_to_string(const PCWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += '*';
    out += "u" + std::to_string(static_cast<int>(w[k]));
  }
  return out;
}

/// Result of normalize: sign and canonical word, or nothing for zero.
struct NormalWord {
  int sign = 1;
  PCWord word;
  friend bool operator==(const NormalWord&, const NormalWord&) = default;
};

class PCElement;

class PCAlgebra {
 public:
  struct Data {
    int m = 0;
    std::vector<VertexSet> adjacency;
    CoefficientRing ring = CoefficientRing::integers();
    std::uint64_t id = 0;
  };

  /// Throws NotFlag with the witness when K is not flag.
  PCAlgebra(const SimplicialComplex& K, CoefficientRing ring = CoefficientRing::integers()) {
    auto check = K.is_flag();
    if (!check.flag) throw NotFlag("complex is not flag; minimal non-face " + to_string(*check.witness));
    auto data = std::make_shared<Data>();
    data->m = K.m();
    data->adjacency.assign(static_cast<std::size_t>(kHardMaxVertices) + 2, VertexSet{});
    for (int v = 1; v <= K.m(); ++v) data->adjacency[static_cast<std::size_t>(v)] = K.neighbors(v);
    data->ring = ring;
    static std::atomic<std::uint64_t> counter{0};
    data->id = ++counter;
    data_ = std::move(data);
  }

  /// Handle sharing the state of an existing algebra.
  static PCAlgebra from_data(std::shared_ptr<const Data> data) { return PCAlgebra(std::move(data)); }

  int m() const { return data_->m; }
  const CoefficientRing& ring() const { return data_->ring; }
  std::uint64_t id() const { return data_->id; }
  bool commute(int a, int b) const { return data_->adjacency[static_cast<std::size_t>(a)].contains(b); }
  const std::shared_ptr<const Data>& data() const { return data_; }

  /// Canonical form: the lexicographically least word in the signed
  /// equivalence class generated by swapping adjacent K-adjacent letters.
  std::optional<NormalWord> normalize(const PCWord& w) const {
    for (char c : w)
      if (c < 1 || c > m()) throw VertexOutOfRange("letter u" + std::to_string(static_cast<int>(c)) + " outside 1.." + std::to_string(m()));
    if (is_zero_word(w)) return std::nullopt;
    NormalWord out;
    PCWord rest = w;
    int parity = 0;
    out.word.reserve(w.size());
    while (!rest.empty()) {
      // A letter can move to the front iff every letter before it commutes with it.
      std::size_t best = rest.size();
      VertexSet prefix_common = VertexSet::range(m());
      for (std::size_t p = 0; p < rest.size(); ++p) {
        int v = rest[p];
        if (prefix_common.contains(v) && (best == rest.size() || v < rest[best])) best = p;
        prefix_common = prefix_common & data_->adjacency[static_cast<std::size_t>(v)];
        if (prefix_common.empty()) break;
      }
      parity += static_cast<int>(best);
      out.word.push_back(rest[best]);
      rest.erase(best, 1);
    }
    out.sign = sign_of(parity);
    return out;
  }

  /// Zero iff two equal letters are separated only by letters commuting with them.
  bool is_zero_word(const PCWord& w) const {
    for (std::size_t p = 0; p < w.size(); ++p) {
      const int v = w[p];
      const VertexSet nbrs = data_->adjacency[static_cast<std::size_t>(v)];
      for (std::size_t q = p + 1; q < w.size(); ++q) {
        if (w[q] == v) return true;
        if (!nbrs.contains(w[q])) break;
      }
    }
    return false;
  }

  PCElement zero() const;
  PCElement one() const;
  PCElement u(int i) const;
  PCElement word(const PCWord& w, const Integer& c = 1) const;
  /// c(A, u_i) evaluated in k[K]^!.
  PCElement c_element(VertexSet A, int i) const;

  /// Ring homomorphism from the free algebra. Atoms default to u_i; other
  /// symbols go through the assignment, which may return nullopt.
  PCElement evaluate(const FreePolynomial& p,
                     const std::function<std::optional<PCElement>(const Symbol&)>& assignment = {}) const;
  /// Evaluation with GPTW generators sent to their nested commutators.
  PCElement evaluate_gptw(const FreePolynomial& p) const;

  /// Number of nonzero normal words of each length 0..N.
  std::vector<Integer> graded_dimensions(int N) const {
    std::vector<Integer> dims(static_cast<std::size_t>(N) + 1, Integer(0));
    PCWord w;
    auto extend = [&](auto&& self) -> void {
      dims[w.size()] += 1;
      if (static_cast<int>(w.size()) == N) return;
      for (int v = 1; v <= m(); ++v) {
        w.push_back(static_cast<char>(v));
        if (is_normal_extension(w)) self(self);
        w.pop_back();
      }
    };
    extend(extend);
    return dims;
  }

 private:
  /// With w[0..n-2] normal, w is normal iff the last letter neither meets an
  /// equal letter nor can jump over a larger letter through commuting letters.
  bool is_normal_extension(const PCWord& w) const {
    const int x = w.back();
    const VertexSet nbrs = data_->adjacency[static_cast<std::size_t>(x)];
    for (std::size_t p = w.size() - 1; p-- > 0;) {
      const int y = w[p];
      if (y == x) return false;
      if (!nbrs.contains(y)) return true;
      if (y > x) return false;
    }
    return true;
  }

  explicit PCAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

/// Element of k[K]^!: normal words with nonzero coefficients.
class PCElement {
 public:
  using TermMap = std::map<PCWord, Integer>;

  PCElement(std::shared_ptr<const PCAlgebra::Data> algebra) : alg_(std::move(algebra)) {}

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint64_t algebra_id() const { return alg_->id; }
  const std::shared_ptr<const PCAlgebra::Data>& algebra() const { return alg_; }

  /// Adds c * w where w is already normal.
  void add_normal(const PCWord& w, const Integer& c) {
    Integer& slot = terms_[w];
    slot += c;
    alg_->ring.reduce(slot);
    if (alg_->ring.is_zero(slot)) terms_.erase(w);
  }

  /// Word length if homogeneous; nullopt for zero.
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      int e = static_cast<int>(w.size());
      if (d && *d != e) throw NotHomogeneous("element of k[K]^! mixes degrees");
      d = e;
    }
    return d;
  }

  PCElement& operator+=(const PCElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_normal(w, c);
    return *this;
  }
  PCElement& operator-=(const PCElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_normal(w, -c);
    return *this;
  }
  friend PCElement operator+(PCElement a, const PCElement& b) { return a += b; }
  friend PCElement operator-(PCElement a, const PCElement& b) { return a -= b; }
  PCElement scaled(const Integer& s) const {
    PCElement out(alg_);
    for (const auto& [w, c] : terms_) out.add_normal(w, c * s);
    return out;
  }

  friend PCElement operator*(const PCElement& a, const PCElement& b);

  friend bool operator==(const PCElement& a, const PCElement& b) {
    return a.alg_->id == b.alg_->id && a.terms_ == b.terms_;
  }

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
        out += pcword_to_string(w);
      }
      first = false;
    }
    return out;
  }

 private:
  void check(const PCElement& o) const {
    if (alg_->id != o.alg_->id) throw AlgebraMismatch("elements of different k[K]^! algebras");
  }

  std::shared_ptr<const PCAlgebra::Data> alg_;
  TermMap terms_;
};

inline PCElement operator*(const PCElement& a, const PCElement& b) {
  a.check(b);
  PCElement out(a.alg_);
  const PCAlgebra alg = PCAlgebra::from_data(a.alg_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_) {
      auto nw = alg.normalize(wa + wb);
      if (nw) out.add_normal(nw->word, ca * cb * nw->sign);
    }
  return out;
}

/// [x, y] = xy - (-1)^{|x||y|} yx in k[K]^!.
inline PCElement commutator(const PCElement& x, const PCElement& y) {
  auto dx = x.homogeneous_degree();
  auto dy = y.homogeneous_degree();
  if (!dx || !dy) return PCElement(x.algebra());
  return x * y - (y * x).scaled(sign_of(*dx * *dy));
}

/// (-1)^{1+deg} x
inline PCElement overline(const PCElement& x) {
  auto d = x.homogeneous_degree();
  if (!d) return x;
  return x.scaled(sign_of(1 + *d));
}

inline PCElement PCAlgebra::zero() const { return PCElement(data_); }
inline PCElement PCAlgebra::one() const { return word(PCWord{}); }
inline PCElement PCAlgebra::u(int i) const { return word(make_pcword({i})); }
inline PCElement PCAlgebra::word(const PCWord& w, const Integer& c) const {
  PCElement out(data_);
  auto nw = normalize(w);
  if (nw) out.add_normal(nw->word, c * nw->sign);
  return out;
}

inline PCElement PCAlgebra::c_element(VertexSet A, int i) const {
  PCElement acc = u(i);
  auto elems = A.elements();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it) acc = commutator(u(*it), acc);
  return acc;
}

inline PCElement PCAlgebra::evaluate(const FreePolynomial& p,
                                     const std::function<std::optional<PCElement>(const Symbol&)>& assignment) const {
  if (!(p.ring() == ring())) throw RingMismatch("free polynomial over " + p.ring().name() + ", algebra over " + ring().name());
  std::map<Symbol, PCElement> cache;
  auto image = [&](const Symbol& s) -> const PCElement& {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    std::optional<PCElement> v;
    if (assignment) v = assignment(s);
    if (!v && s.is_atom()) v = u(s.vertex);
    if (!v) throw UnboundSymbol("no value for symbol " + to_string(s));
    if (v->algebra_id() != id()) throw AlgebraMismatch("assigned value lives in another algebra");
    return cache.emplace(s, *v).first->second;
  };
  PCElement out(data_);
  for (const auto& [w, c] : p.terms()) {
    PCElement term = one().scaled(c);
    for (const auto& s : w) {
      term = term * image(s);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

inline PCElement PCAlgebra::evaluate_gptw(const FreePolynomial& p) const {
  return evaluate(p, [this](const Symbol& s) -> std::optional<PCElement> {
    if (s.is_atom()) return std::nullopt;
    return c_element(s.set.without(s.vertex), s.vertex);
  });
}

}  // namespace looppres
