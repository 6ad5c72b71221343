#include <gtest/gtest.h>

#include <chrono>

#include "corpus.hpp"
#include "looppres/presentation.hpp"

using namespace looppres;
using looppres::testing::full_corpus;

namespace {

VertexSet vs(std::initializer_list<int> v) {
  VertexSet s;
  for (int x : v) s = s.with(x);
  return s;
}

// [x, y] for GPTW symbols written as nested brackets, e.g. "[u3,u1]".
FreePolynomial bracket(const std::string& x, const std::string& y) {
  return commutator(FreePolynomial::symbol(parse_symbol(x)), FreePolynomial::symbol(parse_symbol(y)));
}

// The five-term pentagon relation in its standard form.
FreePolynomial known_pentagon_relation() {
  return bracket("[u3,u1]", "[u4,[u5,u2]]").scaled(-1) + bracket("[u4,u1]", "[u3,[u5,u2]]") -
         bracket("[u5,u2]", "[u3,[u4,u1]]") + bracket("[u4,u2]", "[u1,[u5,u3]]") +
         bracket("[u5,u3]", "[u2,[u4,u1]]");
}

}  // namespace

TEST(Generators, NamedComplexes) {
  PresentationEngine pentagon(complexes::polygon(5));
  auto gens = pentagon.gptw_generators();
  ASSERT_EQ(gens.size(), 10u);
  EXPECT_EQ(std::count_if(gens.begin(), gens.end(), [](const auto& g) { return g.degree() == 2; }), 5);
  EXPECT_EQ(std::count_if(gens.begin(), gens.end(), [](const auto& g) { return g.degree() == 3; }), 5);
  for (const auto& g : gens) EXPECT_FALSE(g.value.is_zero());

  auto square = PresentationEngine(complexes::polygon(4)).gptw_generators();
  ASSERT_EQ(square.size(), 2u);
  EXPECT_EQ(square[0].J, vs({1, 3}));
  EXPECT_EQ(square[0].i, 1);
  EXPECT_EQ(square[1].J, vs({2, 4}));
  EXPECT_EQ(square[1].i, 2);
  EXPECT_TRUE(PresentationEngine(complexes::simplex(5)).gptw_generators().empty());
  EXPECT_THROW(PresentationEngine{complexes::hollow_triangle()}, NotFlag);
}

TEST(Rewriting, PentagonSubstitution) {
  PresentationEngine E(complexes::polygon(5));
  EXPECT_EQ(E.rewrite_chat(vs({1, 2, 4}), 2), FreePolynomial::gptw(vs({1, 2, 4}), 1).scaled(-1));
  EXPECT_TRUE(E.rewrite_chat(vs({1, 2}), 1).is_zero());
  EXPECT_EQ(E.rewrite_chat(vs({1, 3}), 1), FreePolynomial::gptw(vs({1, 3}), 1));
  EXPECT_EQ(E.rewrite_chat(vs({1, 3}), 3), FreePolynomial::gptw(vs({1, 3}), 1));
  EXPECT_THROW(E.rewrite_chat(vs({1, 3}), 2), PreconditionViolated);
  EXPECT_THROW(E.rewrite_chat(vs({1}), 1), PreconditionViolated);
}

TEST(Rewriting, GptwIndicesRewriteToThemselves) {
  for (const auto& [name, K] : full_corpus()) {
    PresentationEngine E(K);
    for (const auto& g : E.gptw_generators())
      ASSERT_EQ(E.rewrite_chat(g.J, g.i), FreePolynomial::symbol(g.symbol)) << name;
  }
}

TEST(Rewriting, SoundOnCorpus) {
  for (const auto& [name, K] : full_corpus()) {
    PresentationEngine E(K);
    const auto& alg = E.algebra();
    for_each_subset(K.vertices(), [&](VertexSet J) {
      if (J.size() < 2) return;
      for (int i : J.elements()) {
        auto p = E.rewrite_chat(J, i);
        ASSERT_EQ(alg.evaluate_gptw(p), alg.c_element(J.without(i), i)) << name << " J=" << to_string(J) << " i=" << i;
        if (!p.is_zero()) ASSERT_EQ(*p.homogeneous_degree(), J.size());
      }
    });
  }
}

TEST(Relations, SquareRelation) {
  auto K = complexes::polygon(4);
  PresentationEngine E(K);
  auto P = E.build();
  ASSERT_EQ(P.relations.size(), 1u);
  auto expected = bracket("[u3,u1]", "[u4,u2]");
  EXPECT_TRUE(P.relations[0].poly == expected || P.relations[0].poly == expected.scaled(-1));
  EXPECT_EQ(P.relations[0].to_string(), "[[u3,u1],[u4,u2]]");
}

TEST(Relations, PentagonMatchesPublishedRelation) {
  const auto start = std::chrono::steady_clock::now();
  auto K = complexes::polygon(5);
  PresentationEngine E(K);
  auto kappa = K.reduced_homology(K.vertices(), CoefficientRing::integers(), 2).cycles.at(0);
  auto rel = E.relation_for_cycle(kappa);
  const auto known = known_pentagon_relation();
  EXPECT_TRUE(rel.poly == known || rel.poly == known.scaled(-1)) << rel.to_string();
  EXPECT_EQ(PresentationEngine::presimplification_terms(rel), 5u);
  EXPECT_TRUE(E.algebra().evaluate_gptw(rel.poly).is_zero());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 1.0);
}

TEST(Relations, HexagonTermCounts) {
  auto K = complexes::polygon(6);
  PresentationEngine E(K);
  auto kappa = K.reduced_homology(K.vertices(), CoefficientRing::integers(), 2).cycles.at(0);
  auto rel = E.relation_for_cycle(kappa);
  auto by_edge = PresentationEngine::presimplification_terms_by_edge(rel);
  EXPECT_EQ(PresentationEngine::presimplification_terms(rel), 21u);
  EXPECT_EQ(by_edge[std::make_pair(1, 2)], 7u);
  EXPECT_EQ(by_edge[std::make_pair(2, 3)], 10u);
  EXPECT_EQ(by_edge[std::make_pair(3, 4)], 4u);
  EXPECT_TRUE(E.algebra().evaluate_gptw(rel.poly).is_zero());
}

TEST(Relations, SignNormalizationAndHomogeneity) {
  for (const auto& [name, K] : full_corpus()) {
    PresentationEngine E(K);
    for (const auto& r : E.build().relations) {
      ASSERT_FALSE(r.poly.is_zero()) << name;
      ASSERT_GT(sgn(r.poly.terms().begin()->second), 0) << name;
      for (const auto& [w, c] : r.poly.terms()) {
        Multidegree d = degree(w);
        ASSERT_EQ(d.homological, -r.J.size());
        for (int v = 1; v <= K.m(); ++v) ASSERT_EQ(d.multi[v - 1], r.J.contains(v) ? 2 : 0);
      }
    }
  }
}

TEST(Relations, RejectsNonCycles) {
  auto K = complexes::polygon(4);
  PresentationEngine E(K);
  SimplicialCycle chain{K.vertices(), 1, {{vs({1, 2}), 1}}};
  EXPECT_THROW(E.relation_for_cycle(chain), NotACycle);
}

TEST(Presentation, CountsAreMinimal) {
  auto check = [](const SimplicialComplex& K, std::size_t gens, std::size_t rels) {
    auto P = PresentationEngine(K).build();
    EXPECT_EQ(P.generators.size(), gens);
    EXPECT_EQ(P.relations.size(), rels);
  };
  check(complexes::polygon(5), 10, 1);
  check(complexes::polygon(4), 2, 1);
  check(complexes::simplex(4), 0, 0);
  for (const auto& [name, K] : full_corpus()) {
    for (const auto& ring : {CoefficientRing::integers(), CoefficientRing::prime_field(2)}) {
      auto P = PresentationEngine(K, ring).build();
      std::map<int, std::size_t> b0, h1;
      for_each_subset(K.vertices(), [&](VertexSet J) {
        if (J.empty()) return;
        b0[J.size()] += K.reduced_homology(J, ring, 1).invariants.gen();
        h1[J.size()] += K.reduced_homology(J, ring, 2).invariants.gen();
      });
      std::erase_if(b0, [](const auto& kv) { return kv.second == 0; });
      std::erase_if(h1, [](const auto& kv) { return kv.second == 0; });
      ASSERT_EQ(P.generator_counts_by_degree(), b0) << name;
      ASSERT_EQ(P.relation_counts_by_degree(), h1) << name;
    }
  }
}

TEST(Presentation, VerifyPassesOnCorpus) {
  for (const auto& [name, K] : full_corpus()) {
    PresentationEngine E(K);
    auto rep = E.verify(E.build());
    ASSERT_TRUE(rep.passed()) << name << (rep.failures.empty() ? "" : ": " + rep.failures[0]);
  }
  PresentationEngine hex(complexes::polygon(6));
  auto P = hex.build();
  auto rep = hex.verify(P);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.relations_checked, 1u);
}

TEST(Presentation, VerifyDetectsCorruption) {
  PresentationEngine E(complexes::polygon(5));
  auto P = E.build();
  P.relations[0].poly += FreePolynomial::gptw(vs({1, 3}), 1) * FreePolynomial::gptw(vs({2, 4, 5}), 2);
  P.generators.pop_back();
  auto rep = E.verify(P);
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.relations_failed, 1u);
  EXPECT_FALSE(rep.counts_ok);
}

TEST(Presentation, ParallelBuildIsDeterministic) {
  auto K = complexes::polygon(7);
  PresentationEngine a(K), b(K);
  auto P1 = a.build(Grading::Multigraded, 1), P2 = b.build(Grading::Multigraded, 4);
  ASSERT_EQ(P1.relations.size(), P2.relations.size());
  for (std::size_t k = 0; k < P1.relations.size(); ++k) EXPECT_EQ(P1.relations[k].poly, P2.relations[k].poly);
  EXPECT_TRUE(b.verify(P2, 4).passed());
}

TEST(ZGraded, MergesCoprimeTorsion) {
  // Z/2 and Z/3 classes in the same degree become one Z/6 relation R1 + R2
  std::vector<Relation> rels(3);
  rels[0].J = vs({1, 2, 3, 4});
  rels[0].order = 2;
  rels[0].poly = FreePolynomial::gptw(vs({1, 3}), 1) * FreePolynomial::gptw(vs({2, 4}), 2);
  rels[1].J = vs({1, 2, 3, 5});
  rels[1].order = 3;
  rels[1].poly = FreePolynomial::gptw(vs({1, 5}), 1) * FreePolynomial::gptw(vs({2, 3}), 2);
  rels[2].J = vs({1, 2, 4, 5});
  rels[2].order = 0;
  rels[2].poly = FreePolynomial::gptw(vs({1, 4}), 1) * FreePolynomial::gptw(vs({2, 5}), 2);
  auto merged = PresentationEngine::merge_relations(rels, CoefficientRing::integers());
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0].order, 0);
  EXPECT_EQ(merged[1].order, 6);
  EXPECT_EQ(merged[1].poly, rels[0].poly + rels[1].poly);

  // Z/2 + Z/2 cannot merge
  rels[1].order = 2;
  EXPECT_EQ(PresentationEngine::merge_relations(rels, CoefficientRing::integers()).size(), 3u);
  // Z/4 + Z/6: primary parts 4 | (2, 3) give Z/12 + Z/2
  rels[0].order = 4;
  rels[1].order = 6;
  rels.pop_back();
  auto m2 = PresentationEngine::merge_relations(rels, CoefficientRing::integers());
  ASSERT_EQ(m2.size(), 2u);
  EXPECT_EQ(m2[0].order, 12);
  EXPECT_EQ(m2[1].order, 2);
  // generator of Z/4 plus 2 times that of Z/6 (its 3-part), then 3 times that of Z/6 (its 2-part)
  EXPECT_EQ(m2[0].poly, rels[0].poly + rels[1].poly.scaled(2));
  EXPECT_EQ(m2[1].poly, rels[1].poly.scaled(3));
}

TEST(ZGraded, CountsMatchDirectSum) {
  for (const auto& [name, K] : full_corpus()) {
    PresentationEngine E(K);
    auto P = E.build(Grading::ZGraded);
    auto rep = E.verify(P);
    ASSERT_TRUE(rep.passed()) << name;
    // over Z with torsion-free H_1 nothing merges
    ASSERT_EQ(P.merged.size(), P.relations.size()) << name;
  }
}

TEST(Freeness, NamedComplexes) {
  const auto Z = CoefficientRing::integers();
  EXPECT_TRUE(is_free_loop_algebra(looppres::testing::tree_complex(), Z));
  EXPECT_TRUE(is_free_loop_algebra(complexes::path(5), Z));
  EXPECT_TRUE(is_free_loop_algebra(complexes::simplex(4), Z));
  EXPECT_FALSE(is_free_loop_algebra(complexes::polygon(4), Z));
  EXPECT_THROW(is_free_loop_algebra(complexes::hollow_triangle(), Z), NotFlag);
  for (const auto& [name, K] : full_corpus()) {
    auto P = PresentationEngine(K).build();
    ASSERT_EQ(is_free_loop_algebra(K, Z), P.relations.empty()) << name;
  }
}
