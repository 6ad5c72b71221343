#include <gtest/gtest.h>

#include <cstdlib>

#include "corpus.hpp"
#include "looppres/simplicial.hpp"

using namespace looppres;
using looppres::testing::full_corpus;

namespace {

VertexSet vs(std::initializer_list<int> v) {
  VertexSet s;
  for (int x : v) s = s.with(x);
  return s;
}

// Rank over Q of the boundary map from faces of size n to size n-1 in K_J.
std::size_t rational_rank(const SimplicialComplex& K, VertexSet J, int n) {
  auto rows = K.faces_of_size(n - 1, J), cols = K.faces_of_size(n, J);
  std::vector<std::vector<Rational>> a(rows.size(), std::vector<Rational>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (int v : cols[c].elements()) {
      auto it = std::find(rows.begin(), rows.end(), cols[c].without(v));
      a[static_cast<std::size_t>(it - rows.begin())][c] = sign_of(cols[c].count_below(v));
    }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size() && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && a[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && a[r][c] != 0) {
        Rational f = a[r][c] / a[rank][c];
        for (std::size_t k = c; k < cols.size(); ++k) a[r][k] -= f * a[rank][k];
      }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST(SimplicialComplex, ConstructionMaximalizesFacets) {
  SimplicialComplex K(3, {vs({1, 2}), vs({1, 2, 3}), vs({1}), vs({1, 2, 3})});
  ASSERT_EQ(K.facets().size(), 1u);
  EXPECT_EQ(K.facets()[0], vs({1, 2, 3}));
  EXPECT_EQ(K.faces().size(), 8u);
}

TEST(SimplicialComplex, RejectsGhostVerticesAndOversizedInput) {
  EXPECT_THROW(SimplicialComplex(3, {vs({1, 2})}), InvalidComplex);
  EXPECT_THROW(SimplicialComplex(2, {vs({1, 3})}), Error);
  EXPECT_THROW(SimplicialComplex(31, {}), InvalidComplex);
}

TEST(SimplicialComplex, VertexCapFollowsEnvironment) {
  setenv("LOOPPRES_MAX_M", "4", 1);
  EXPECT_THROW(complexes::polygon(5), InvalidComplex);
  EXPECT_NO_THROW(complexes::polygon(4));
  unsetenv("LOOPPRES_MAX_M");
  EXPECT_NO_THROW(complexes::polygon(5));
}

TEST(SimplicialComplex, FlagnessWithWitness) {
  EXPECT_TRUE(complexes::polygon(5).is_flag().flag);
  auto hollow = complexes::hollow_triangle().is_flag();
  EXPECT_FALSE(hollow.flag);
  EXPECT_EQ(*hollow.witness, vs({1, 2, 3}));
  EXPECT_FALSE(complexes::rp2().is_flag().flag);
  EXPECT_EQ(complexes::hollow_triangle().clique_of_skeleton().facets(), std::vector<VertexSet>{vs({1, 2, 3})});
}

TEST(SimplicialComplex, FlagCheckMatchesBruteForce) {
  // flag iff every set whose pairs are all edges is a face
  for (const auto& [name, K] : full_corpus()) {
    bool flag = true;
    for_each_subset(K.vertices(), [&](VertexSet s) {
      bool clique = true;
      for (int a : s.elements())
        for (int b : s.elements())
          if (a < b && !K.is_face(vs({a, b}))) clique = false;
      if (clique && !K.is_face(s)) flag = false;
    });
    EXPECT_EQ(K.is_flag().flag, flag) << name;
  }
  SimplicialComplex boundary_of_tetra(4, {vs({1, 2, 3}), vs({1, 2, 4}), vs({1, 3, 4}), vs({2, 3, 4})});
  EXPECT_FALSE(boundary_of_tetra.is_flag().flag);
  EXPECT_EQ(*boundary_of_tetra.is_flag().witness, vs({1, 2, 3, 4}));
}

TEST(SimplicialComplex, ThetaSetAndComponents) {
  auto K = complexes::polygon(5);
  EXPECT_EQ(K.theta_set(vs({1, 3})), vs({1}));
  EXPECT_EQ(K.theta_set(vs({1, 2, 4})), vs({1}));
  EXPECT_TRUE(K.theta_set(vs({1, 2})).empty());
  EXPECT_TRUE(K.theta_set(K.vertices()).empty());
  EXPECT_THROW(K.theta_set(VertexSet{}), EmptySubset);
  EXPECT_EQ(K.path_components(vs({1, 2, 4})).size(), 2u);
  EXPECT_EQ(K.shortest_path(K.vertices(), 1, 3), (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(K.shortest_path(vs({1, 3}), 1, 3).empty());
}

TEST(SimplicialComplex, FAndHVectors) {
  auto fh = complexes::polygon(5).f_h_vectors();
  EXPECT_EQ(fh.f, (std::vector<Integer>{1, 5, 5}));
  EXPECT_EQ(fh.h, (std::vector<Integer>{1, 3, 1}));
  auto sq = complexes::polygon(4).f_h_vectors();
  EXPECT_EQ(sq.h, (std::vector<Integer>{1, 2, 1}));
  EXPECT_EQ(complexes::simplex(4).f_h_vectors().h, (std::vector<Integer>{1, 0, 0, 0, 0}));
}

TEST(SimplicialComplex, ReducedEulerPolynomialMatchesDirectCount) {
  for (const auto& [name, K] : full_corpus()) {
    std::vector<Integer> expected(static_cast<std::size_t>(K.m()) + 1, Integer(0));
    for_each_subset(K.vertices(), [&](VertexSet J) {
      Integer chi = 0;
      for (VertexSet f : K.faces())
        if (f.is_subset_of(J)) chi += sign_of(f.size() - 1);
      expected[static_cast<std::size_t>(J.size())] += chi;
    });
    EXPECT_EQ(K.reduced_euler_polynomial(), expected) << name;
  }
  // square: 1 - 2t^2 + t^4 up to the sign convention -chi~
  EXPECT_EQ(complexes::polygon(4).reduced_euler_polynomial(), (std::vector<Integer>{-1, 0, 2, 0, -1}));
}

TEST(SimplicialComplex, HomologyOfNamedComplexes) {
  const auto Z = CoefficientRing::integers();
  auto P = complexes::polygon(5);
  auto h1 = P.reduced_homology(P.vertices(), Z, 2);
  EXPECT_EQ(h1.invariants.rank, 1u);
  ASSERT_EQ(h1.cycles.size(), 1u);
  EXPECT_TRUE(h1.cycles[0].is_cycle(Z));
  EXPECT_EQ(h1.cycles[0].terms.size(), 5u);
  auto h0 = P.reduced_homology(vs({1, 3}), Z, 1);
  EXPECT_EQ(h0.invariants.rank, 1u);
  EXPECT_TRUE(P.reduced_homology(VertexSet{}, Z, 0).invariants.rank == 1u);

  auto R = complexes::rp2();
  auto rp_h1 = R.reduced_homology(R.vertices(), Z, 2).invariants;
  EXPECT_EQ(rp_h1.rank, 0u);
  EXPECT_EQ(rp_h1.torsion, std::vector<Integer>{2});
  EXPECT_TRUE(R.reduced_homology(R.vertices(), Z, 3).invariants.is_zero());
  EXPECT_EQ(R.reduced_homology(R.vertices(), CoefficientRing::prime_field(2), 3).invariants.rank, 1u);
  EXPECT_EQ(R.reduced_homology(R.vertices(), CoefficientRing::prime_field(2), 2).invariants.rank, 1u);
  EXPECT_TRUE(R.reduced_homology(R.vertices(), CoefficientRing::prime_field(3), 2).invariants.is_zero());
}

TEST(SimplicialComplex, RationalBettiNumbersMatchRankComputation) {
  const auto Q = CoefficientRing::rationals();
  for (const auto& [name, K] : full_corpus(6)) {
    for_each_subset(K.vertices(), [&](VertexSet J) {
      for (int n = 1; n <= 3; ++n) {
        const std::size_t cn = K.faces_of_size(n, J).size();
        const std::size_t expected = cn - rational_rank(K, J, n) - rational_rank(K, J, n + 1);
        ASSERT_EQ(K.reduced_homology(J, Q, n).invariants.rank, expected) << name << " J=" << to_string(J);
      }
    });
  }
}

TEST(SimplicialComplex, HomologyCyclesAreCycles) {
  for (const auto& ring : {CoefficientRing::integers(), CoefficientRing::prime_field(2)})
    for (const auto& [name, K] : full_corpus(6))
      for_each_subset(K.vertices(), [&](VertexSet J) {
        for (const auto& c : K.reduced_homology(J, ring, 2).cycles) ASSERT_TRUE(c.is_cycle(ring)) << name;
      });
}

TEST(SimplicialComplex, FullSubcomplex) {
  auto K = complexes::polygon(5);
  auto sub = K.full_subcomplex(vs({1, 2, 4}));
  EXPECT_TRUE(sub.is_face(vs({1, 2})));
  EXPECT_FALSE(sub.is_face(vs({3})));
  EXPECT_EQ(sub.path_components(sub.vertices()).size(), 2u);
}
