#pragma once

// Simplicial complexes on [m]: flagness, full subcomplexes, path components,
// reduced homology with cycle representatives, f/h-vectors and the reduced
// Euler characteristics of all full subcomplexes.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/exactlin.hpp"
#include "looppres/ring.hpp"
#include "looppres/vertex_set.hpp"

namespace looppres {

/// A simplicial chain in K_J: sum of coefficient * [face].
///
/// dimension is n-1 for faces of size n; the empty face has dimension -1.
struct SimplicialCycle {
  VertexSet J;
  int dimension = 0;
  std::vector<std::pair<VertexSet, Integer>> terms;

  /// Boundary d[I] = sum_{i in I} (-1)^{|I_<i|} [I \ i], coefficients reduced in ring.
  std::vector<std::pair<VertexSet, Integer>> boundary(const CoefficientRing& ring) const {
    std::vector<std::pair<VertexSet, Integer>> out;
    for (const auto& [face, coeff] : terms)
      for (int v : face.elements()) {
        VertexSet sub = face.without(v);
        Integer c = sign_of(face.count_below(v)) * coeff;
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& t) { return t.first == sub; });
        if (it == out.end()) out.emplace_back(sub, c);
        else it->second += c;
      }
    std::vector<std::pair<VertexSet, Integer>> nonzero;
    for (auto& [f, c] : out) {
      ring.reduce(c);
      if (!ring.is_zero(c)) nonzero.emplace_back(f, c);
    }
    std::sort(nonzero.begin(), nonzero.end(),
              [](const auto& a, const auto& b) { return SizeThenMask{}(a.first, b.first); });
    return nonzero;
  }
  bool is_cycle(const CoefficientRing& ring) const { return boundary(ring).empty(); }
};

/// H~_{n-1}(K_J; k) with one generating cycle per invariant generator.
struct ReducedHomology {
  ModuleInvariants invariants;
  std::vector<SimplicialCycle> cycles;
};

struct FlagCheck {
  bool flag = true;
  std::optional<VertexSet> witness;  ///< a minimal non-face of size >= 3 when not flag
};

struct FHVectors {
  std::vector<Integer> f;  ///< f[k] = number of faces with k vertices, k = 0..d
  std::vector<Integer> h;  ///< h_0..h_d
  int d = 0;               ///< dim + 1
};

class SimplicialComplex {
 public:
  /// Complex on [m] generated by the given faces. Facets may be redundant or
  /// repeated; they are maximalized. Every vertex of [m] must be a face.
  SimplicialComplex(int m, const std::vector<VertexSet>& facets)
      : SimplicialComplex(VertexSet::range(checked_vertex_count(m)), facets) {
    for (int v = 1; v <= m; ++v)
      if (!is_face(VertexSet::singleton(v))) throw InvalidComplex("ghost vertex " + std::to_string(v));
    m_ = m;
  }

  static int checked_vertex_count(int m) {
    if (m < 0 || m > max_vertices())
      throw InvalidComplex("m = " + std::to_string(m) + " outside 0.." + std::to_string(max_vertices()) +
                           " (LOOPPRES_MAX_M overrides the cap)");
    return m;
  }

  /// Clique complex of the graph with the given edges on [m].
  static SimplicialComplex clique_complex(int m, const std::vector<std::pair<int, int>>& edges) {
    std::vector<VertexSet> adj(static_cast<std::size_t>(m) + 1);
    for (auto [a, b] : edges) {
      if (a < 1 || a > m || b < 1 || b > m || a == b) throw InvalidComplex("bad edge");
      adj[a] = adj[a].with(b);
      adj[b] = adj[b].with(a);
    }
    // Bron-Kerbosch without pivoting; fine at desk scale.
    std::vector<VertexSet> cliques;
    auto extend = [&](auto&& self, VertexSet r, VertexSet p, VertexSet x) -> void {
      if (p.empty() && x.empty()) {
        cliques.push_back(r);
        return;
      }
      for (int v : p.elements()) {
        self(self, r.with(v), p & adj[v], x & adj[v]);
        p = p.without(v);
        x = x.with(v);
      }
    };
    extend(extend, VertexSet{}, VertexSet::range(m), VertexSet{});
    return SimplicialComplex(m, cliques);
  }

  int m() const { return m_; }
  VertexSet vertices() const { return vertices_; }
  const std::vector<VertexSet>& facets() const { return facets_; }
  /// All faces including the empty one, ordered by (size, bitmask).
  const std::vector<VertexSet>& faces() const { return faces_; }
  bool is_face(VertexSet s) const { return face_set_.count(s.bits()) != 0; }
  VertexSet neighbors(int v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
  bool is_edge(int a, int b) const { return a != b && neighbors(a).contains(b); }
  /// Dimension; -1 for the complex {∅}.
  int dimension() const { return faces_.back().size() - 1; }

  std::vector<VertexSet> faces_of_size(int k, VertexSet within) const {
    std::vector<VertexSet> out;
    for (VertexSet f : faces_)
      if (f.size() == k && f.is_subset_of(within)) out.push_back(f);
    return out;
  }

  /// Flag iff every minimal non-face has two elements.
  FlagCheck is_flag() const {
    std::optional<VertexSet> best;
    for (VertexSet f : faces_) {
      if (f.size() < 2) continue;
      VertexSet common = vertices_;
      for (int v : f.elements()) common = common & neighbors(v);
      for (int v : common.above(f.max()).elements()) {
        VertexSet s = f.with(v);
        if (is_face(s)) continue;
        bool minimal = true;
        for (int x : s.elements())
          if (!is_face(s.without(x))) {
            minimal = false;
            break;
          }
        if (minimal && (!best || SizeThenMask{}(s, *best))) best = s;
      }
    }
    return best ? FlagCheck{false, best} : FlagCheck{true, std::nullopt};
  }

  /// Clique complex of the 1-skeleton (flag completion).
  SimplicialComplex clique_of_skeleton() const {
    std::vector<std::pair<int, int>> edges;
    for (VertexSet f : faces_)
      if (f.size() == 2) edges.emplace_back(f.min(), f.max());
    return clique_complex(m_, edges);
  }

  /// K_J = {I in K : I ⊆ J}, labelled by the original vertices.
  SimplicialComplex full_subcomplex(VertexSet J) const {
    if (!J.is_subset_of(vertices_)) throw PreconditionViolated("J is not a subset of the vertex set");
    std::vector<VertexSet> gens;
    for (VertexSet f : faces_)
      if (f.is_subset_of(J)) gens.push_back(f);
    return SimplicialComplex(J, gens, m_);
  }

  /// Path components of K_J ordered by smallest vertex. BFS visits the
  /// smallest-numbered neighbour first.
  std::vector<VertexSet> path_components(VertexSet J) const {
    std::vector<VertexSet> comps;
    VertexSet seen;
    for (int start : J.elements()) {
      if (seen.contains(start)) continue;
      VertexSet comp = VertexSet::singleton(start);
      std::deque<int> queue{start};
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : ((neighbors(v) & J) - comp).elements()) {
          comp = comp.with(w);
          queue.push_back(w);
        }
      }
      seen = seen | comp;
      comps.push_back(comp);
    }
    return comps;
  }

  /// Smallest vertices of the components of K_J not containing max(J).
  VertexSet theta_set(VertexSet J) const {
    if (J.empty()) throw EmptySubset("theta_set of the empty set");
    VertexSet theta;
    const int top = J.max();
    for (VertexSet comp : path_components(J))
      if (!comp.contains(top)) theta = theta.with(comp.min());
    return theta;
  }

  /// Shortest path from `from` to `to` inside K_J, found by BFS from `from`
  /// that explores neighbours in increasing order. Empty if disconnected.
  std::vector<int> shortest_path(VertexSet J, int from, int to) const {
    if (!J.contains(from) || !J.contains(to)) throw PreconditionViolated("path endpoints must lie in J");
    std::vector<int> parent(static_cast<std::size_t>(kHardMaxVertices) + 2, 0);
    VertexSet seen = VertexSet::singleton(from);
    std::deque<int> queue{from};
    while (!queue.empty() && !seen.contains(to)) {
      int v = queue.front();
      queue.pop_front();
      for (int w : ((neighbors(v) & J) - seen).elements()) {
        seen = seen.with(w);
        parent[w] = v;
        queue.push_back(w);
      }
    }
    if (!seen.contains(to)) return {};
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Boundary matrix of the augmented chain complex of K_J from faces with n
  /// vertices to faces with n-1 vertices (bases ordered by bitmask).
  IntMatrix boundary_matrix(VertexSet J, int n) const {
    auto src = n >= 0 ? faces_of_size(n, J) : std::vector<VertexSet>{};
    auto dst = n >= 1 ? faces_of_size(n - 1, J) : std::vector<VertexSet>{};
    IntMatrix d = zero_int_matrix(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (int v : src[c].elements()) {
        auto it = std::lower_bound(dst.begin(), dst.end(), src[c].without(v));
        d(static_cast<std::size_t>(it - dst.begin()), c) = sign_of(src[c].count_below(v));
      }
    return d;
  }

  /// H~_{n-1}(K_J; ring) with generating cycles. H~_{-1}(K_∅) = k.
  ReducedHomology reduced_homology(VertexSet J, const CoefficientRing& ring, int n) const {
    if (n < 0) throw PreconditionViolated("reduced_homology needs n >= 0");
    if (!J.is_subset_of(vertices_)) throw PreconditionViolated("J is not a subset of the vertex set");
    const auto basis = faces_of_size(n, J);
    IntMatrix d1 = boundary_matrix(J, n);
    IntMatrix d2 = boundary_matrix(J, n + 1);
    ReducedHomology out;
    out.invariants = homology_with_representatives(d1, d2, ring);
    for (const auto& gen : out.invariants.generators) {
      SimplicialCycle cyc{J, n - 1, {}};
      for (std::size_t k = 0; k < basis.size(); ++k)
        if (sgn(gen[k]) != 0) cyc.terms.emplace_back(basis[k], gen[k]);
      out.cycles.push_back(std::move(cyc));
    }
    return out;
  }

  FHVectors f_h_vectors() const {
    FHVectors out;
    out.d = dimension() + 1;
    out.f.assign(static_cast<std::size_t>(out.d) + 1, Integer(0));
    for (VertexSet f : faces_) out.f[static_cast<std::size_t>(f.size())] += 1;
    // sum_i f_{i-1} t^i (1-t)^{d-i}
    out.h.assign(static_cast<std::size_t>(out.d) + 1, Integer(0));
    for (int i = 0; i <= out.d; ++i) {
      const int e = out.d - i;
      Integer binom = 1;
      for (int k = 0; k <= e; ++k) {
        out.h[static_cast<std::size_t>(i + k)] += sign_of(k) * binom * out.f[static_cast<std::size_t>(i)];
        binom = binom * (e - k) / (k + 1);
      }
    }
    return out;
  }

  /// Coefficients of sum_{J ⊆ [m]} χ~(K_J) t^{|J|}, with χ~(K_∅) = -1.
  std::vector<Integer> reduced_euler_polynomial() const {
    const int m = m_;
    const std::size_t n = std::size_t{1} << m;
    // chi[J] = sum over faces F ⊆ J of (-1)^{|F|-1}, by a subset-sum transform.
    std::vector<std::int64_t> chi(n, 0);
    for (VertexSet f : faces_) chi[f.bits()] += sign_of(f.size() - 1);
    for (int b = 0; b < m; ++b)
      for (std::size_t mask = 0; mask < n; ++mask)
        if (mask & (std::size_t{1} << b)) chi[mask] += chi[mask ^ (std::size_t{1} << b)];
    std::vector<Integer> poly(static_cast<std::size_t>(m) + 1, Integer(0));
    for (std::size_t mask = 0; mask < n; ++mask)
      poly[static_cast<std::size_t>(VertexSet(static_cast<VertexSet::mask_type>(mask)).size())] += chi[mask];
    return poly;
  }

 private:
  SimplicialComplex(VertexSet vertices, const std::vector<VertexSet>& generators, int m = -1)
      : m_(m < 0 ? vertices.max() : m), vertices_(vertices), adjacency_(kHardMaxVertices + 2) {
    std::vector<VertexSet> gens;
    for (VertexSet g : generators) {
      if (!g.is_subset_of(vertices)) throw InvalidComplex("face " + to_string(g) + " uses a vertex outside the vertex set");
      gens.push_back(g);
    }
    std::sort(gens.begin(), gens.end(), [](VertexSet a, VertexSet b) { return SizeThenMask{}(b, a); });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    for (VertexSet g : gens) {
      bool contained = std::any_of(facets_.begin(), facets_.end(), [&](VertexSet f) { return g.is_subset_of(f); });
      if (!contained) facets_.push_back(g);
    }
    std::sort(facets_.begin(), facets_.end(), SizeThenMask{});
    face_set_.insert(0u);
    for (VertexSet f : facets_)
      for_each_subset(f, [&](VertexSet s) { face_set_.insert(s.bits()); });
    for (auto bits : face_set_) faces_.push_back(VertexSet(bits));
    std::sort(faces_.begin(), faces_.end(), SizeThenMask{});
    for (VertexSet f : faces_)
      if (f.size() == 2) {
        int a = f.min(), b = f.max();
        adjacency_[a] = adjacency_[a].with(b);
        adjacency_[b] = adjacency_[b].with(a);
      }
    if (facets_.empty()) facets_.push_back(VertexSet{});
  }

  int m_ = 0;
  VertexSet vertices_;
  std::vector<VertexSet> facets_;
  std::vector<VertexSet> faces_;
  std::unordered_set<VertexSet::mask_type> face_set_;
  std::vector<VertexSet> adjacency_;
};

/// Small named complexes used by the tests, the samples and the CLI.
namespace complexes {

/// Boundary of the m-gon (m >= 4 for a flag complex).
inline SimplicialComplex polygon(int m) {
  std::vector<VertexSet> facets;
  for (int i = 1; i <= m; ++i) facets.push_back(VertexSet{i, i % m + 1});
  return SimplicialComplex(m, facets);
}

/// Full simplex on [m].
inline SimplicialComplex simplex(int m) { return SimplicialComplex(m, {VertexSet::range(m)}); }

/// m isolated points.
inline SimplicialComplex points(int m) {
  std::vector<VertexSet> facets;
  for (int i = 1; i <= m; ++i) facets.push_back(VertexSet::singleton(i));
  return SimplicialComplex(m, facets);
}

/// Path graph 1-2-...-m.
inline SimplicialComplex path(int m) {
  std::vector<VertexSet> facets;
  for (int i = 1; i < m; ++i) facets.push_back(VertexSet{i, i + 1});
  if (m == 1) facets.push_back(VertexSet{1});
  return SimplicialComplex(m, facets);
}

/// Star graph with centre 1.
inline SimplicialComplex star(int m) {
  std::vector<VertexSet> facets;
  for (int i = 2; i <= m; ++i) facets.push_back(VertexSet{1, i});
  if (m == 1) facets.push_back(VertexSet{1});
  return SimplicialComplex(m, facets);
}

/// Minimal 6-vertex triangulation of the real projective plane (not flag).
inline SimplicialComplex rp2() {
  return SimplicialComplex(6, {VertexSet{1, 2, 3}, VertexSet{1, 3, 4}, VertexSet{1, 4, 5}, VertexSet{1, 5, 6},
                               VertexSet{1, 2, 6}, VertexSet{2, 3, 5}, VertexSet{3, 4, 6}, VertexSet{2, 4, 5},
                               VertexSet{3, 5, 6}, VertexSet{2, 4, 6}});
}

/// Hollow triangle: the three edges of {1,2,3} without the 2-face.
inline SimplicialComplex hollow_triangle() {
  return SimplicialComplex(3, {VertexSet{1, 2}, VertexSet{2, 3}, VertexSet{1, 3}});
}

}  // namespace complexes

}  // namespace looppres
