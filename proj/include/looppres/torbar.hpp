#pragma once

// The Koszul-type complex Λ[m] ⊗ k<K> with differentials d̄ and d̂, the chain
// maps g_J, and explicit cycles in the bar construction of H_*(ΩZ_K).

#include <algorithm>
#include <array>
#include <compare>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/exactlin.hpp"
#include "looppres/pcalg.hpp"
#include "looppres/ring.hpp"
#include "looppres/simplicial.hpp"
#include "looppres/vertex_set.hpp"

namespace looppres {

/// Basis element u_I ⊗ χ_α of Λ[m] ⊗ k<K>.
struct KoszulBasisElement {
  VertexSet I;
  std::array<int, kHardMaxVertices> alpha{};

  static KoszulBasisElement make(VertexSet I, const std::vector<int>& alpha_entries) {
    KoszulBasisElement e;
    e.I = I;
    for (std::size_t k = 0; k < alpha_entries.size() && k < e.alpha.size(); ++k) e.alpha[k] = alpha_entries[k];
    return e;
  }
  /// u_I ⊗ χ_L with α the indicator of L.
  static KoszulBasisElement indicator(VertexSet I, VertexSet L) {
    KoszulBasisElement e;
    e.I = I;
    for (int v : L.elements()) e.alpha[static_cast<std::size_t>(v - 1)] = 1;
    return e;
  }

  int& a(int v) { return alpha[static_cast<std::size_t>(v - 1)]; }
  int a(int v) const { return alpha[static_cast<std::size_t>(v - 1)]; }
  VertexSet support() const {
    VertexSet s;
    for (int v = 1; v <= kHardMaxVertices; ++v)
      if (a(v) > 0) s = s.with(v);
    return s;
  }
  /// |α|, the homological degree n.
  int weight() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
  KoszulBasisElement minus(int v) const {
    KoszulBasisElement e = *this;
    --e.a(v);
    return e;
  }

  std::string to_string() const {
    std::string out = "u" + looppres::to_string(I) + "⊗χ(";
    bool first = true;
    for (int v = 1; v <= kHardMaxVertices; ++v)
      if (a(v) > 0) {
        if (!first) out += ',';
        out += std::to_string(v) + (a(v) > 1 ? "^" + std::to_string(a(v)) : "");
        first = false;
      }
    return out + ")";
  }

  friend bool operator==(const KoszulBasisElement&, const KoszulBasisElement&) = default;
  friend auto operator<=>(const KoszulBasisElement&, const KoszulBasisElement&) = default;
};

using KoszulChain = std::map<KoszulBasisElement, Integer>;

inline void add_to(KoszulChain& chain, const KoszulBasisElement& e, const Integer& c) {
  Integer& slot = chain[e];
  slot += c;
  if (sgn(slot) == 0) chain.erase(e);
}

/// Checks supp(α) ∈ K.
inline void check_koszul_element(const SimplicialComplex& K, const KoszulBasisElement& e) {
  if (!K.is_face(e.support())) throw PreconditionViolated("supp(alpha) is not a face of K: " + e.to_string());
}

/// d̄(u_I ⊗ χ_α) = (-1)^{|I|} Σ_{i ∈ supp α} (u_I ∧ u_i) ⊗ χ_{α - e_i}
/// with u_I ∧ u_i = (-1)^{|I_{>i}|} u_{I ⊔ i}, zero when i ∈ I.
inline KoszulChain dbar(const KoszulBasisElement& e) {
  KoszulChain out;
  for (int i : e.support().elements()) {
    if (e.I.contains(i)) continue;
    add_to(out, KoszulBasisElement{e.I.with(i), e.minus(i).alpha}, sign_of(e.I.size() + e.I.count_above(i)));
  }
  return out;
}

inline KoszulChain dbar(const KoszulChain& chain) {
  KoszulChain out;
  for (const auto& [e, c] : chain)
    for (const auto& [f, d] : dbar(e)) add_to(out, f, c * d);
  return out;
}

/// One summand of d̂(1 ⊗ u_I ⊗ χ_α): coeff · prefactor ⊗ target, where the
/// prefactor is 1 when `unit` is set and c(A, u_i) otherwise.
struct HatTerm {
  bool unit = true;
  VertexSet A;
  int i = 0;
  KoszulBasisElement target;
  Integer coeff;
};

/// Both sums of d̂(1 ⊗ u_I ⊗ χ_α):
///   Σ_i (-1)^{|I|} 1 ⊗ (u_I ∧ u_i) ⊗ χ_{α-e_i}
///   + Σ_i Σ_{I = A ⊔ B, max A > i} (-1)^{θ(A,B)+|A|} c(A,u_i) ⊗ u_B ⊗ χ_{α-e_i}.
inline std::vector<HatTerm> dhat(const KoszulBasisElement& e) {
  std::vector<HatTerm> out;
  for (int i : e.support().elements()) {
    const KoszulBasisElement rest = e.minus(i);
    if (!e.I.contains(i))
      out.push_back(HatTerm{true, {}, i, KoszulBasisElement{e.I.with(i), rest.alpha},
                            Integer(sign_of(e.I.size() + e.I.count_above(i)))});
    for_each_subset(e.I, [&](VertexSet A) {
      if (A.max() <= i) return;
      VertexSet B = e.I - A;
      out.push_back(HatTerm{false, A, i, KoszulBasisElement{B, rest.alpha}, Integer(sign_of(koszul_theta(A, B) + A.size()))});
    });
  }
  return out;
}

/// Augmentation of d̂: keeps only the unit-prefactor terms.
inline KoszulChain augment(const std::vector<HatTerm>& terms) {
  KoszulChain out;
  for (const auto& t : terms)
    if (t.unit) add_to(out, t.target, t.coeff);
  return out;
}

/// Element of k[K]^! ⊗ Λ[m] ⊗ k<K>, prefactors evaluated in k[K]^!.
using HatChain = std::map<KoszulBasisElement, PCElement>;

inline void add_to(HatChain& chain, const KoszulBasisElement& e, const PCElement& x) {
  auto it = chain.find(e);
  if (it == chain.end()) {
    if (!x.is_zero()) chain.emplace(e, x);
    return;
  }
  it->second += x;
  if (it->second.is_zero()) chain.erase(it);
}

/// d̂ extended by d̂(a ⊗ m) = (-1)^{deg a} a · d̂(m).
inline HatChain apply_dhat(const PCAlgebra& alg, const HatChain& chain) {
  HatChain out;
  for (const auto& [e, a] : chain) {
    const auto deg = a.homogeneous_degree();
    const int s = deg ? sign_of(*deg) : 1;
    for (const auto& t : dhat(e)) {
      PCElement pre = t.unit ? alg.one() : alg.c_element(t.A, t.i);
      add_to(out, t.target, (a * pre).scaled(t.coeff * s));
    }
  }
  return out;
}

/// Elements of k[K]^! ⊗ k<K>, keyed by α.
using ResolutionChain = std::map<std::array<int, kHardMaxVertices>, PCElement>;

/// Φ(a ⊗ u_I ⊗ χ_α) = a · û_I ⊗ χ_α.
inline ResolutionChain phi(const PCAlgebra& alg, const HatChain& chain) {
  ResolutionChain out;
  for (const auto& [e, a] : chain) {
    PCWord w;
    for (int v : e.I.elements()) w.push_back(static_cast<char>(v));
    PCElement x = a * alg.word(w);
    auto it = out.find(e.alpha);
    if (it == out.end()) out.emplace(e.alpha, x);
    else it->second += x;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// d(a ⊗ χ_α) = (-1)^{deg a} Σ_{i ∈ supp α} a u_i ⊗ χ_{α - e_i}.
inline ResolutionChain resolution_d(const PCAlgebra& alg, const ResolutionChain& chain) {
  ResolutionChain out;
  for (const auto& [alpha, a] : chain) {
    KoszulBasisElement e{VertexSet{}, alpha};
    for (int i : e.support().elements()) {
      auto deg = a.homogeneous_degree();
      PCElement x = (a * alg.u(i)).scaled(deg ? sign_of(*deg) : 1);
      auto key = e.minus(i).alpha;
      auto it = out.find(key);
      if (it == out.end()) out.emplace(key, x);
      else it->second += x;
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

/// ε(L, J) = (-1)^{Σ_{ℓ ∈ L} |J_{<ℓ}|}
inline int epsilon(VertexSet L, VertexSet J) {
  int e = 0;
  for (int l : L.elements()) e += J.count_below(l);
  return sign_of(e);
}

/// g_J([L]) = ε(L,J) u_{J \ L} ⊗ χ_L.
inline KoszulChain g_map(VertexSet J, const std::vector<std::pair<VertexSet, Integer>>& chain) {
  KoszulChain out;
  for (const auto& [L, c] : chain) {
    if (!L.is_subset_of(J)) throw FaceOutsideJ("face " + to_string(L) + " is not inside " + to_string(J));
    add_to(out, KoszulBasisElement::indicator(J - L, L), c * epsilon(L, J));
  }
  return out;
}

inline KoszulChain g_map(const SimplicialCycle& cycle) { return g_map(cycle.J, cycle.terms); }

/// Homology of the (n, -|J|, 2J) strand of (Λ[m] ⊗ k<K>, d̄). The strand has
/// basis u_{J\L} ⊗ χ_L over faces L ⊆ J with |L| = n.
inline ModuleInvariants koszul_homology(const SimplicialComplex& K, VertexSet J, const CoefficientRing& ring, int n) {
  if (n < 0) throw PreconditionViolated("koszul_homology needs n >= 0");
  auto strand = [&](int k) {
    std::vector<KoszulBasisElement> basis;
    if (k < 0) return basis;
    for (VertexSet L : K.faces_of_size(k, J)) basis.push_back(KoszulBasisElement::indicator(J - L, L));
    return basis;
  };
  auto matrix = [&](const std::vector<KoszulBasisElement>& src, const std::vector<KoszulBasisElement>& dst) {
    IntMatrix d = zero_int_matrix(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& [e, v] : dbar(src[c])) {
        auto it = std::find(dst.begin(), dst.end(), e);
        if (it == dst.end()) throw ChainConditionViolated("d̄ left the strand");
        d(static_cast<std::size_t>(it - dst.begin()), c) = v;
      }
    return d;
  };
  auto here = strand(n), below = strand(n - 1), above = strand(n + 1);
  return homology_with_representatives(matrix(here, below), matrix(above, here), ring);
}

/// Letter c(A, u_i) of a bar tensor.
struct BarLetter {
  VertexSet A;
  int i = 0;
  friend bool operator==(const BarLetter&, const BarLetter&) = default;
  friend auto operator<=>(const BarLetter&, const BarLetter&) = default;
};

inline std::string to_string(const BarLetter& l) {
  if (l.A.empty()) return "u" + std::to_string(l.i);
  return to_string(Symbol{Symbol::Kind::Gptw, l.A.with(l.i), l.i});
}

/// Tensor words [c(A_1,u_{i_1}) | ... | c(A_n,u_{i_n})] with coefficients.
struct BarElement {
  VertexSet J;
  int n = 0;
  std::map<std::vector<BarLetter>, Integer> terms;

  void add(const std::vector<BarLetter>& letters, const Integer& c) {
    Integer& slot = terms[letters];
    slot += c;
    if (sgn(slot) == 0) terms.erase(letters);
  }
  BarElement scaled(const Integer& s) const {
    BarElement out{J, n, {}};
    for (const auto& [w, c] : terms) out.add(w, c * s);
    return out;
  }
  friend bool operator==(const BarElement& a, const BarElement& b) { return a.terms == b.terms; }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [letters, c] : terms) {
      const bool neg = sgn(c) < 0;
      Integer a = abs(c);
      out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (a != 1) out += a.get_str() + "*";
      out += "[";
      for (std::size_t k = 0; k < letters.size(); ++k) out += (k ? "|" : "") + looppres::to_string(letters[k]);
      out += "]";
      first = false;
    }
    return out;
  }
};

/// Bar tensors with letters expanded into normal words of k[K]^!.
using ExpandedBar = std::map<std::vector<PCWord>, Integer>;

inline void add_to(ExpandedBar& bar, const std::vector<PCWord>& w, const Integer& c, const CoefficientRing& ring) {
  Integer& slot = bar[w];
  slot += c;
  ring.reduce(slot);
  if (ring.is_zero(slot)) bar.erase(w);
}

/// c * (x_1 ⊗ ... ⊗ x_n) expanded multilinearly.
inline ExpandedBar expand_tensor(const std::vector<PCElement>& letters, const Integer& c, const CoefficientRing& ring) {
  ExpandedBar out;
  std::vector<PCWord> cur;
  auto rec = [&](auto&& self, std::size_t k, const Integer& acc) -> void {
    if (k == letters.size()) {
      add_to(out, cur, acc, ring);
      return;
    }
    for (const auto& [w, x] : letters[k].terms()) {
      cur.push_back(w);
      self(self, k + 1, acc * x);
      cur.pop_back();
    }
  };
  rec(rec, 0, c);
  return out;
}

inline ExpandedBar expand(const PCAlgebra& alg, const BarElement& b) {
  ExpandedBar out;
  std::map<BarLetter, PCElement> cache;
  for (const auto& [letters, c] : b.terms) {
    std::vector<PCElement> xs;
    for (const auto& l : letters) {
      auto it = cache.find(l);
      if (it == cache.end()) it = cache.emplace(l, alg.c_element(l.A, l.i)).first;
      xs.push_back(it->second);
    }
    for (const auto& [w, x] : expand_tensor(xs, c, alg.ring())) add_to(out, w, x, alg.ring());
  }
  return out;
}

/// d[a_1|...|a_n] = Σ_{k=1}^{n-1} [ā_1|...|ā_{k-1}|ā_k a_{k+1}|a_{k+2}|...|a_n], ā = (-1)^{1+deg a} a.
inline ExpandedBar bar_differential(const PCAlgebra& alg, const ExpandedBar& bar) {
  ExpandedBar out;
  for (const auto& [words, c] : bar)
    for (std::size_t k = 0; k + 1 < words.size(); ++k) {
      int sign_exp = 0;
      for (std::size_t t = 0; t <= k; ++t) sign_exp += 1 + static_cast<int>(words[t].size());
      auto prod = alg.normalize(words[k] + words[k + 1]);
      if (!prod) continue;
      std::vector<PCWord> w;
      w.insert(w.end(), words.begin(), words.begin() + static_cast<std::ptrdiff_t>(k));
      w.push_back(prod->word);
      w.insert(w.end(), words.begin() + static_cast<std::ptrdiff_t>(k) + 2, words.end());
      add_to(out, w, c * prod->sign * sign_of(sign_exp), alg.ring());
    }
  return out;
}

inline bool verify_bar_cycle(const PCAlgebra& alg, const ExpandedBar& bar) { return bar_differential(alg, bar).empty(); }
inline bool verify_bar_cycle(const PCAlgebra& alg, const BarElement& b) { return verify_bar_cycle(alg, expand(alg, b)); }

/// Bar cycle of a simplicial cycle κ = Σ λ_I [I] in K_J:
///   Σ_I ε(I,J) λ_I Σ (-1)^{Σ_{t1<t2} θ(J_{t1}, J_{t2})} [c(J_1,u_{i_1})|...|c(J_n,u_{i_n})]
/// over orderings (i_1..i_n) of I and ordered partitions J \ I = J_1 ⊔ ... ⊔ J_n
/// with max(J_t) > i_t.
inline BarElement bar_cycle(const SimplicialComplex& K, const SimplicialCycle& kappa,
                            const CoefficientRing& ring = CoefficientRing::integers()) {
  if (!kappa.is_cycle(ring)) throw NotACycle("chain in K_" + to_string(kappa.J) + " has nonzero boundary");
  const VertexSet J = kappa.J;
  const int n = kappa.dimension + 1;
  BarElement out{J, n, {}};
  for (const auto& [I, lambda] : kappa.terms) {
    if (!I.is_subset_of(J)) throw FaceOutsideJ("face " + to_string(I) + " is not inside " + to_string(J));
    if (!K.is_face(I)) throw PreconditionViolated("chain term " + to_string(I) + " is not a face of K");
    const Integer coeff = lambda * epsilon(I, J);
    std::vector<int> order = I.elements();
    const std::vector<int> rest = (J - I).elements();
    do {
      std::vector<VertexSet> parts(static_cast<std::size_t>(n));
      auto assign = [&](auto&& self, std::size_t k) -> void {
        if (k == rest.size()) {
          int theta = 0;
          std::vector<BarLetter> letters;
          for (int t = 0; t < n; ++t) {
            if (parts[t].max() <= order[t]) return;
            letters.push_back(BarLetter{parts[t], order[t]});
            for (int s = t + 1; s < n; ++s) theta += koszul_theta(parts[t], parts[s]);
          }
          out.add(letters, coeff * sign_of(theta));
          return;
        }
        for (int t = 0; t < n; ++t) {
          parts[t] = parts[t].with(rest[k]);
          self(self, k + 1);
          parts[t] = parts[t].without(rest[k]);
        }
      };
      if (n == 0) {
        out.add({}, coeff);
        break;
      }
      assign(assign, 0);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  if (ring.kind() == RingKind::PrimeField)
    for (auto it = out.terms.begin(); it != out.terms.end();) {
      ring.reduce(it->second);
      it = ring.is_zero(it->second) ? out.terms.erase(it) : std::next(it);
    }
  return out;
}

/// Two-letter formula for 1-cycles κ = Σ λ_ij [{i,j}]:
///   Σ (-1)^{|J<i|+|J<j|} λ_ij Σ_{A ⊔ B = J \ ij, max A > i, max B > j}
///     (-1)^{θ(A,B)} [c(A,u_i)|c(B,u_j)] + (-1)^{θ(B,A)} [c(B,u_j)|c(A,u_i)].
inline BarElement bar_cycle_two(const SimplicialCycle& kappa) {
  if (kappa.dimension != 1) throw PreconditionViolated("two-letter formula needs a 1-cycle");
  const VertexSet J = kappa.J;
  BarElement out{J, 2, {}};
  for (const auto& [edge, lambda] : kappa.terms) {
    const int i = edge.min(), j = edge.max();
    const Integer coeff = lambda * sign_of(J.count_below(i) + J.count_below(j));
    const VertexSet rest = J.without(i).without(j);
    for_each_subset(rest, [&](VertexSet A) {
      VertexSet B = rest - A;
      if (A.max() <= i || B.max() <= j) return;
      out.add({BarLetter{A, i}, BarLetter{B, j}}, coeff * sign_of(koszul_theta(A, B)));
      out.add({BarLetter{B, j}, BarLetter{A, i}}, coeff * sign_of(koszul_theta(B, A)));
    });
  }
  return out;
}

/// Bar cycle for the 0-cycle [{max J}] - [{i}] of K_J: ±[c(J \ i, u_i)].
inline BarElement bar_cycle_one(VertexSet J, int i) {
  BarElement out{J, 1, {}};
  if (J.max() != i) out.add({BarLetter{J.without(i), i}}, -epsilon(VertexSet::singleton(i), J));
  return out;
}

}  // namespace looppres
