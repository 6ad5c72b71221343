#pragma once

// Minimal presentations of H_*(ΩZ_K) for flag K: GPTW generators, rewriting
// of nested commutators into them, relations from 1-cycles of full
// subcomplexes, and an oracle check against k[K]^!.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/exactlin.hpp"
#include "looppres/freealg.hpp"
#include "looppres/parallel.hpp"
#include "looppres/pcalg.hpp"
#include "looppres/ring.hpp"
#include "looppres/simplicial.hpp"
#include "looppres/vertex_set.hpp"

namespace looppres {

enum class Grading { Multigraded, ZGraded };

struct GptwGenerator {
  VertexSet J;
  int i = 0;
  Symbol symbol;
  PCElement value;  ///< c(J \ i, u_i) in k[K]^!

  int degree() const { return J.size(); }
};

/// One commutator coeff · [ĉ(A,u_i), ĉ(B,u_j)] contributed by edge {i,j}.
struct RelationComponent {
  int i = 0, j = 0;
  VertexSet A, B;
  int sign = 1;  ///< (-1)^{|J<i|+|J<j|+θ(A,B)+|A|}, before λ_ij
  Integer lambda;
  bool immediately_zero = false;  ///< max A ~ i or max B ~ j, so a factor vanishes outright
  FreePolynomial left, right;
};

struct Relation {
  VertexSet J;
  SimplicialCycle source_cycle;
  Integer order = 0;  ///< order of the H_1 class (0 = infinite)
  std::vector<RelationComponent> components;
  int normalization = 1;  ///< overall sign applied so the least word has positive coefficient
  FreePolynomial poly;

  int degree() const { return J.size(); }

  /// Commutator form "-[[u3,u1],[u4,[u5,u2]]] + ..." over the components.
  std::string to_string() const;
};

/// A Z-graded relation: a sum of multigraded relations scaled so that their
/// classes generate one cyclic summand of ⊕_{|J|=n} H_1(K_J).
struct MergedRelation {
  int degree = 0;
  std::vector<std::pair<std::size_t, Integer>> constituents;  ///< (index into relations, scale)
  Integer order = 0;
  FreePolynomial poly;
};

/// Expected minimal counts from Tor: b̃_0(K_J) generators and gen H_1(K_J)
/// relations per multidegree, and the degree-wise totals.
struct CountsCertificate {
  std::map<VertexSet, std::size_t> generators_by_J;
  std::map<VertexSet, std::size_t> relations_by_J;
  std::map<int, std::size_t> generators_by_degree;
  std::map<int, std::size_t> multigraded_relations_by_degree;
  std::map<int, std::size_t> zgraded_relations_by_degree;  ///< gen(⊕_{|J|=n} H_1(K_J))

  std::size_t total_generators() const {
    std::size_t s = 0;
    for (auto& [n, c] : generators_by_degree) s += c;
    return s;
  }
  std::size_t total_relations(Grading g) const {
    std::size_t s = 0;
    for (auto& [n, c] : (g == Grading::Multigraded ? multigraded_relations_by_degree : zgraded_relations_by_degree)) s += c;
    return s;
  }
};

struct Presentation {
  CoefficientRing ring = CoefficientRing::integers();
  Grading grading = Grading::Multigraded;
  std::vector<GptwGenerator> generators;
  std::vector<Relation> relations;       ///< one per minimal generator of each H_1(K_J)
  std::vector<MergedRelation> merged;    ///< filled for ZGraded
  CountsCertificate certificate;

  std::size_t relation_count() const { return grading == Grading::Multigraded ? relations.size() : merged.size(); }
  std::map<int, std::size_t> generator_counts_by_degree() const {
    std::map<int, std::size_t> out;
    for (const auto& g : generators) ++out[g.degree()];
    return out;
  }
  std::map<int, std::size_t> relation_counts_by_degree() const {
    std::map<int, std::size_t> out;
    if (grading == Grading::Multigraded)
      for (const auto& r : relations) ++out[r.degree()];
    else
      for (const auto& r : merged) ++out[r.degree];
    return out;
  }
};

struct VerifyReport {
  std::size_t generators_checked = 0, generators_failed = 0;
  std::size_t rewrites_checked = 0, rewrites_failed = 0;
  std::size_t relations_checked = 0, relations_failed = 0;
  bool counts_ok = true;
  std::vector<std::string> failures;

  bool passed() const { return generators_failed == 0 && rewrites_failed == 0 && relations_failed == 0 && counts_ok; }
};

inline std::string render_factor(const FreePolynomial& p) {
  if (p.size() == 1) {
    const auto& [w, c] = *p.terms().begin();
    if (w.size() == 1 && c == 1) return to_string(w[0]);
  }
  return "(" + p.to_string() + ")";
}

inline std::string Relation::to_string() const {
  // Combine components whose factors coincide, then print ±[x,y].
  std::map<std::pair<std::string, std::string>, Integer> terms;
  std::vector<std::pair<std::string, std::string>> order;
  for (const auto& c : components) {
    if (c.left.is_zero() || c.right.is_zero()) continue;
    FreePolynomial l = c.left, r = c.right;
    Integer coeff = c.lambda * c.sign * normalization;
    // fold a leading -1 of a single-symbol factor into the coefficient
    auto fold = [&](FreePolynomial& f) {
      if (f.size() == 1 && f.terms().begin()->second == -1 && f.terms().begin()->first.size() == 1) {
        f = f.scaled(-1);
        coeff = -coeff;
      }
    };
    fold(l);
    fold(r);
    auto key = std::make_pair(render_factor(l), render_factor(r));
    if (!terms.count(key)) order.push_back(key);
    terms[key] += coeff;
  }
  std::string out;
  bool first = true;
  for (const auto& key : order) {
    const Integer& c = terms[key];
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    Integer a = abs(c);
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (a != 1) out += a.get_str() + "*";
    out += "[" + key.first + "," + key.second + "]";
    first = false;
  }
  return first ? "0" : out;
}

/// Holds K, k[K]^! and the memoized rewriting table.
class PresentationEngine {
 public:
  PresentationEngine(const SimplicialComplex& K, CoefficientRing ring = CoefficientRing::integers())
      : K_(K), ring_(ring), alg_(K, ring) {}

  const SimplicialComplex& complex() const { return K_; }
  const PCAlgebra& algebra() const { return alg_; }
  const CoefficientRing& ring() const { return ring_; }

  /// One generator per (J, i ∈ Θ(J)), ordered by (|J|, J, i).
  std::vector<GptwGenerator> gptw_generators() const {
    std::vector<GptwGenerator> out;
    for (VertexSet J : subsets_by_size()) {
      if (J.size() < 2) continue;
      for (int i : K_.theta_set(J).elements())
        out.push_back(GptwGenerator{J, i, Symbol::gptw(J, i), alg_.c_element(J.without(i), i)});
    }
    return out;
  }

  /// ĉ(J \ i, u_i): a polynomial in GPTW symbols equal to c(J \ i, u_i) in k[K]^!.
  FreePolynomial rewrite_chat(VertexSet J, int i) {
    if (!J.contains(i)) throw PreconditionViolated("rewrite_chat needs i in J");
    if (J.size() < 2) throw PreconditionViolated("rewrite_chat needs |J| >= 2");
    if (!J.is_subset_of(K_.vertices())) throw VertexOutOfRange("J is not inside the vertex set");
    const auto key = std::make_pair(J.bits(), i);
    {
      std::lock_guard lock(memo_mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    FreePolynomial result = compute_chat(J, i);
    std::lock_guard lock(memo_mutex_);
    return memo_.emplace(key, std::move(result)).first->second;
  }

  /// ĉ(A, u_i) with the convention ĉ(∅, u_i) = u_i.
  FreePolynomial chat(VertexSet A, int i) {
    if (A.empty()) return FreePolynomial::atom(i, ring_);
    return rewrite_chat(A.with(i), i);
  }

  /// Relation attached to a 1-cycle of K_J:
  ///   Σ_{i<j} (-1)^{|J<i|+|J<j|} λ_ij Σ_{A ⊔ B = J\ij, max A > i, max B > j}
  ///     (-1)^{θ(A,B)+|A|} [ĉ(A,u_i), ĉ(B,u_j)],
  /// negated if needed so that the least word has a positive coefficient.
  Relation relation_for_cycle(const SimplicialCycle& kappa) {
    if (kappa.dimension != 1) throw PreconditionViolated("relations come from 1-cycles");
    if (!kappa.is_cycle(ring_)) throw NotACycle("chain in K_" + to_string(kappa.J) + " has nonzero boundary");
    const VertexSet J = kappa.J;
    Relation rel;
    rel.J = J;
    rel.source_cycle = kappa;
    rel.poly = FreePolynomial::zero(ring_);
    for (const auto& [edge, lambda] : kappa.terms) {
      if (edge.size() != 2 || !K_.is_face(edge) || !edge.is_subset_of(J))
        throw PreconditionViolated("cycle term " + to_string(edge) + " is not an edge of K_J");
      const int i = edge.min(), j = edge.max();
      const VertexSet rest = J.without(i).without(j);
      for_each_subset(rest, [&](VertexSet A) {
        const VertexSet B = rest - A;
        if (A.max() <= i || B.max() <= j) return;
        RelationComponent c;
        c.i = i;
        c.j = j;
        c.A = A;
        c.B = B;
        c.lambda = lambda;
        c.sign = sign_of(J.count_below(i) + J.count_below(j) + koszul_theta(A, B) + A.size());
        c.immediately_zero = K_.is_edge(i, A.max()) || K_.is_edge(j, B.max());
        c.left = chat(A, i);
        c.right = chat(B, j);
        rel.poly += commutator(c.left, c.right).scaled(lambda * c.sign);
        rel.components.push_back(std::move(c));
      });
    }
    if (!rel.poly.is_zero() && sgn(rel.poly.terms().begin()->second) < 0) {
      rel.normalization = -1;
      rel.poly = rel.poly.scaled(-1);
    }
    return rel;
  }

  /// Commutator terms before simplification (components not immediately zero), per edge.
  static std::map<std::pair<int, int>, std::size_t> presimplification_terms_by_edge(const Relation& rel) {
    std::map<std::pair<int, int>, std::size_t> out;
    for (const auto& c : rel.components)
      if (!c.immediately_zero) ++out[{c.i, c.j}];
    return out;
  }

  static std::size_t presimplification_terms(const Relation& rel) {
    std::size_t n = 0;
    for (const auto& [e, c] : presimplification_terms_by_edge(rel)) n += c;
    return n;
  }

  CountsCertificate certificate() const {
    CountsCertificate cert;
    std::map<int, std::vector<Integer>> torsion_by_degree;
    std::map<int, std::size_t> free_by_degree;
    for (VertexSet J : subsets_by_size()) {
      if (J.empty()) continue;
      const std::size_t b0 = static_cast<std::size_t>(K_.theta_set(J).size());
      auto h1 = K_.reduced_homology(J, ring_, 2).invariants;
      const int n = J.size();
      cert.generators_by_J[J] = b0;
      cert.relations_by_J[J] = h1.gen();
      cert.generators_by_degree[n] += b0;
      cert.multigraded_relations_by_degree[n] += h1.gen();
      free_by_degree[n] += h1.rank;
      for (const auto& d : h1.torsion) torsion_by_degree[n].push_back(d);
    }
    for (auto& [n, total] : cert.multigraded_relations_by_degree) {
      // gen of the block sum, computed from its diagonal presentation matrix
      const auto& tors = torsion_by_degree[n];
      const std::size_t rows = free_by_degree[n] + tors.size();
      IntMatrix pres = zero_int_matrix(rows, tors.size());
      for (std::size_t k = 0; k < tors.size(); ++k) pres(free_by_degree[n] + k, k) = tors[k];
      cert.zgraded_relations_by_degree[n] = module_gen_rel(pres, ring_).gen;
      (void)total;
    }
    return cert;
  }

  Presentation build(Grading grading = Grading::Multigraded, unsigned jobs = 1) {
    Presentation P;
    P.ring = ring_;
    P.grading = grading;
    P.generators = gptw_generators();
    P.certificate = certificate();

    std::vector<VertexSet> Js;
    for (VertexSet J : subsets_by_size())
      if (J.size() >= 4 && P.certificate.relations_by_J[J] > 0) Js.push_back(J);
    std::vector<std::vector<Relation>> per_J(Js.size());
    parallel_for(Js.size(), jobs, [&](std::size_t k) {
      auto h1 = K_.reduced_homology(Js[k], ring_, 2);
      for (std::size_t g = 0; g < h1.cycles.size(); ++g) {
        Relation r = relation_for_cycle(h1.cycles[g]);
        r.order = h1.invariants.generator_orders[g];
        per_J[k].push_back(std::move(r));
      }
    });
    for (auto& rs : per_J)
      for (auto& r : rs) P.relations.push_back(std::move(r));
    if (grading == Grading::ZGraded) P.merged = merge_relations(P.relations, ring_);
    return P;
  }

  /// Oracle check of a presentation against k[K]^!.
  VerifyReport verify(const Presentation& P, unsigned jobs = 1) {
    VerifyReport rep;
    std::mutex rep_mutex;
    auto fail = [&](std::string msg) {
      std::lock_guard lock(rep_mutex);
      rep.failures.push_back(std::move(msg));
    };
    for (const auto& g : P.generators) {
      ++rep.generators_checked;
      if (!(g.value == alg_.c_element(g.J.without(g.i), g.i)) || g.value.is_zero() ||
          !K_.theta_set(g.J).contains(g.i)) {
        ++rep.generators_failed;
        fail("generator " + to_string(g.symbol) + " does not match c(J\\i,u_i)");
      }
    }
    std::vector<std::pair<VertexSet, int>> pairs;
    for (VertexSet J : subsets_by_size())
      if (J.size() >= 2)
        for (int i : J.elements()) pairs.emplace_back(J, i);
    std::vector<char> ok(pairs.size(), 1);
    parallel_for(pairs.size(), jobs, [&](std::size_t k) {
      auto [J, i] = pairs[k];
      if (!(alg_.evaluate_gptw(rewrite_chat(J, i)) == alg_.c_element(J.without(i), i))) {
        ok[k] = 0;
        fail("rewrite of c(" + to_string(J.without(i)) + ",u" + std::to_string(i) + ") evaluates incorrectly");
      }
    });
    rep.rewrites_checked = pairs.size();
    for (char c : ok) rep.rewrites_failed += c ? 0 : 1;
    auto check_relation = [&](const FreePolynomial& poly, const std::string& label) {
      ++rep.relations_checked;
      if (!alg_.evaluate_gptw(poly).is_zero()) {
        ++rep.relations_failed;
        fail("relation " + label + " does not vanish in k[K]^!");
      }
    };
    for (const auto& r : P.relations) check_relation(r.poly, "for J = " + to_string(r.J));
    for (const auto& r : P.merged) check_relation(r.poly, "of degree " + std::to_string(r.degree));
    const auto& cert = P.certificate;
    if (P.generator_counts_by_degree() != nonzero_only(cert.generators_by_degree)) {
      rep.counts_ok = false;
      fail("generator counts differ from the sum of b0(K_J)");
    }
    const auto& expected_rel = P.grading == Grading::Multigraded ? cert.multigraded_relations_by_degree
                                                                 : cert.zgraded_relations_by_degree;
    if (P.relation_counts_by_degree() != nonzero_only(expected_rel)) {
      rep.counts_ok = false;
      fail("relation counts differ from gen H_1");
    }
    std::map<VertexSet, std::size_t> by_J;
    for (const auto& r : P.relations) ++by_J[r.J];
    if (by_J != nonzero_only(cert.relations_by_J)) {
      rep.counts_ok = false;
      fail("multigraded relation counts differ from gen H_1(K_J)");
    }
    return rep;
  }

  /// Subsets of the vertex set ordered by (size, bitmask).
  std::vector<VertexSet> subsets_by_size() const {
    std::vector<VertexSet> out;
    for_each_subset(K_.vertices(), [&](VertexSet s) { out.push_back(s); });
    std::sort(out.begin(), out.end(), SizeThenMask{});
    return out;
  }

  /// Groups torsion classes by prime (CRT) so that each merged relation
  /// generates one cyclic summand of ⊕_{|J|=n} H_1; free classes stay single.
  static std::vector<MergedRelation> merge_relations(const std::vector<Relation>& relations, const CoefficientRing& ring) {
    std::vector<MergedRelation> out;
    std::map<int, std::vector<std::size_t>> by_degree;
    for (std::size_t k = 0; k < relations.size(); ++k) by_degree[relations[k].degree()].push_back(k);
    for (const auto& [n, idx] : by_degree) {
      // prime -> list of (relation index, prime power, cofactor)
      std::map<Integer, std::vector<std::tuple<std::size_t, Integer, Integer>>> primary;
      for (std::size_t k : idx) {
        const Integer d = relations[k].order;
        if (sgn(d) == 0) {
          MergedRelation m{n, {{k, 1}}, 0, relations[k].poly};
          out.push_back(std::move(m));
          continue;
        }
        for (const auto& [p, pe] : prime_power_factors(d)) primary[p].emplace_back(k, pe, d / pe);
      }
      std::size_t groups = 0;
      for (auto& [p, list] : primary) {
        std::stable_sort(list.begin(), list.end(),
                         [](const auto& a, const auto& b) { return std::get<1>(a) > std::get<1>(b); });
        groups = std::max(groups, list.size());
      }
      for (std::size_t s = 0; s < groups; ++s) {
        MergedRelation m{n, {}, 1, FreePolynomial::zero(ring)};
        for (auto& [p, list] : primary) {
          if (s >= list.size()) continue;
          const auto& [k, pe, cof] = list[s];
          m.constituents.emplace_back(k, cof);
          m.order *= pe;
          m.poly += relations[k].poly.scaled(cof);
        }
        out.push_back(std::move(m));
      }
    }
    return out;
  }

  /// d = Π p^e as a list of (p, p^e).
  static std::vector<std::pair<Integer, Integer>> prime_power_factors(Integer d) {
    std::vector<std::pair<Integer, Integer>> out;
    d = abs(d);
    for (Integer p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Integer pe = 1;
      while (d % p == 0) {
        d /= p;
        pe *= p;
      }
      out.emplace_back(p, pe);
    }
    if (d > 1) out.emplace_back(d, d);
    return out;
  }

 private:
  template <class Key>
  static std::map<Key, std::size_t> nonzero_only(const std::map<Key, std::size_t>& m) {
    std::map<Key, std::size_t> out;
    for (const auto& [k, v] : m)
      if (v) out[k] = v;
    return out;
  }

  /// Solves the rearrangement identity along the edge {i, j} (which
  /// vanishes as [u_i, u_j] = 0) for c(J \ i, u_i).
  FreePolynomial solve_along_edge(VertexSet J, int i, int j) {
    const int a = std::min(i, j), b = std::max(i, j);
    FreePolynomial sum = FreePolynomial::zero(ring_);
    const VertexSet rest = J.without(a).without(b);
    for_each_subset(rest, [&](VertexSet A) {
      const VertexSet B = rest - A;
      if (A.count_above(a) == 0 || B.count_above(b) == 0) return;
      sum += commutator(chat(A, a), chat(B, b)).scaled(sign_of(koszul_theta(A, B) + B.size()));
    });
    const int above_a = J.count_above(a), above_b = J.count_above(b);
    if (i == a)
      return (rewrite_chat(J, b).scaled(sign_of(above_a)) - sum).scaled(sign_of(above_b));
    return (rewrite_chat(J, a).scaled(sign_of(above_b)) + sum).scaled(sign_of(above_a));
  }

  FreePolynomial compute_chat(VertexSet J, int i) {
    const int top = J.max();
    if (i == top) return rewrite_chat(J, J.without(i).max());
    const auto path_to_top = K_.shortest_path(J, i, top);
    if (!path_to_top.empty()) {
      if (path_to_top.size() == 2) return FreePolynomial::zero(ring_);
      return solve_along_edge(J, i, path_to_top[1]);
    }
    int i0 = i;
    for (VertexSet comp : K_.path_components(J))
      if (comp.contains(i)) i0 = comp.min();
    if (i0 == i) return FreePolynomial::gptw(J, i, ring_);
    const auto path = K_.shortest_path(J, i, i0);
    return solve_along_edge(J, i, path[1]);
  }

  SimplicialComplex K_;
  CoefficientRing ring_;
  PCAlgebra alg_;
  std::mutex memo_mutex_;
  std::map<std::pair<VertexSet::mask_type, int>, FreePolynomial> memo_;
};

/// True iff H_1(K_J; ring) = 0 for every J, i.e. H_*(ΩZ_K) is a tensor algebra.
inline bool is_free_loop_algebra(const SimplicialComplex& K, const CoefficientRing& ring) {
  auto check = K.is_flag();
  if (!check.flag) throw NotFlag("complex is not flag; minimal non-face " + to_string(*check.witness));
  bool free = true;
  for_each_subset(K.vertices(), [&](VertexSet J) {
    if (free && J.size() >= 3 && !K.reduced_homology(J, ring, 2).invariants.is_zero()) free = false;
  });
  return free;
}

}  // namespace looppres
