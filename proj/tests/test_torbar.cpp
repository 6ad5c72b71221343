#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "looppres/torbar.hpp"

using namespace looppres;
using looppres::testing::full_corpus;

namespace {

VertexSet vs(std::initializer_list<int> v) {
  VertexSet s;
  for (int x : v) s = s.with(x);
  return s;
}

// Terms of a bar element whose letters are all nonzero in k[K]^!.
std::size_t nonzero_letter_terms(const PCAlgebra& alg, const BarElement& b) {
  std::size_t n = 0;
  for (const auto& [letters, c] : b.terms) {
    bool ok = true;
    for (const auto& l : letters) ok = ok && !alg.c_element(l.A, l.i).is_zero();
    n += ok ? 1 : 0;
  }
  return n;
}

bool equal_up_to_sign(const BarElement& a, const BarElement& b) { return a == b || a == b.scaled(-1); }

}  // namespace

TEST(Koszul, DifferentialExamples) {
  auto e1 = KoszulBasisElement::indicator(VertexSet{}, vs({1}));
  KoszulChain expected;
  add_to(expected, KoszulBasisElement::indicator(vs({1}), VertexSet{}), 1);
  EXPECT_EQ(dbar(e1), expected);
  EXPECT_TRUE(dbar(KoszulBasisElement::indicator(vs({1}), vs({1}))).empty());
}

TEST(Koszul, DifferentialSquaresToZero) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    KoszulBasisElement e;
    e.I = VertexSet(static_cast<VertexSet::mask_type>(rng() & 63));
    for (int v = 1; v <= 6; ++v) e.a(v) = static_cast<int>(rng() % 3);
    KoszulChain c;
    add_to(c, e, 1);
    ASSERT_TRUE(dbar(dbar(c)).empty()) << e.to_string();
  }
}

TEST(Koszul, GMapExamples) {
  const VertexSet J = vs({1, 3});
  KoszulChain a, b;
  add_to(a, KoszulBasisElement::indicator(vs({3}), vs({1})), 1);
  add_to(b, KoszulBasisElement::indicator(vs({1}), vs({3})), -1);
  EXPECT_EQ(g_map(J, {{vs({1}), 1}}), a);
  EXPECT_EQ(g_map(J, {{vs({3}), 1}}), b);
  EXPECT_THROW(g_map(J, {{vs({2}), 1}}), FaceOutsideJ);
}

TEST(Koszul, GMapSendsCyclesToCycles) {
  for (const auto& [name, K] : full_corpus(6))
    for_each_subset(K.vertices(), [&](VertexSet J) {
      for (int n = 1; n <= 3; ++n)
        for (const auto& c : K.reduced_homology(J, CoefficientRing::integers(), n).cycles)
          ASSERT_TRUE(dbar(g_map(c)).empty()) << name << " " << to_string(J);
    });
}

TEST(Koszul, StrandHomologyEqualsReducedHomology) {
  const CoefficientRing rings[] = {CoefficientRing::integers(), CoefficientRing::rationals(),
                                   CoefficientRing::prime_field(2), CoefficientRing::prime_field(3)};
  for (const auto& [name, K] : full_corpus(6))
    for (const auto& ring : rings)
      for_each_subset(K.vertices(), [&](VertexSet J) {
        for (int n = 0; n <= J.size(); ++n) {
          auto a = koszul_homology(K, J, ring, n), b = K.reduced_homology(J, ring, n).invariants;
          ASSERT_EQ(a.rank, b.rank) << name << " " << ring.name() << " " << to_string(J) << " n=" << n;
          ASSERT_EQ(a.torsion, b.torsion) << name << " " << to_string(J) << " n=" << n;
        }
      });
  auto P = complexes::polygon(5);
  EXPECT_EQ(koszul_homology(P, P.vertices(), CoefficientRing::integers(), 2).rank, 1u);
  EXPECT_EQ(koszul_homology(P, VertexSet{}, CoefficientRing::integers(), 0).rank, 1u);
}

TEST(Koszul, LiftedDifferentialIsAChainMap) {
  // Φ ∘ d̂ = d ∘ Φ from the lifted complex to the resolution k[K]^! ⊗ k<K>
  std::mt19937 rng(37);
  for (const auto& K : {complexes::polygon(4), complexes::polygon(5), complexes::path(4), looppres::testing::tree_complex()}) {
    PCAlgebra alg(K);
    const auto faces = K.faces();
    for (int trial = 0; trial < 150; ++trial) {
      KoszulBasisElement e;
      e.I = VertexSet(static_cast<VertexSet::mask_type>(rng() & ((1u << K.m()) - 1)));
      VertexSet L = faces[rng() % faces.size()];
      for (int v : L.elements()) e.a(v) = 1 + static_cast<int>(rng() % 2);
      HatChain x;
      add_to(x, e, alg.one());
      ASSERT_EQ(phi(alg, apply_dhat(alg, x)), resolution_d(alg, phi(alg, x))) << e.to_string();
      ASSERT_TRUE(apply_dhat(alg, apply_dhat(alg, x)).empty()) << e.to_string();
    }
  }
}

TEST(BarCycles, ExplicitCyclesAreClosed) {
  const auto Z = CoefficientRing::integers();
  std::size_t checked = 0;
  for (const auto& [name, K] : full_corpus(6)) {
    PCAlgebra alg(K);
    for_each_subset(K.vertices(), [&](VertexSet J) {
      for (int n = 1; n <= 3; ++n)
        for (const auto& kappa : K.reduced_homology(J, Z, n).cycles) {
          auto b = bar_cycle(K, kappa, Z);
          ASSERT_TRUE(verify_bar_cycle(alg, b)) << name << " " << to_string(J) << " n=" << n;
          ASSERT_FALSE(expand(alg, b).empty()) << name << " " << to_string(J) << " n=" << n;
          if (n == 2) ASSERT_EQ(b, bar_cycle_two(kappa)) << name << " " << to_string(J);
          ++checked;
        }
    });
  }
  EXPECT_GT(checked, 100u);
}

TEST(BarCycles, OneLetterCycles) {
  for (const auto& [name, K] : full_corpus(6)) {
    PCAlgebra alg(K);
    for_each_subset(K.vertices(), [&](VertexSet J) {
      if (J.size() < 2) return;
      for (int i : K.theta_set(J).elements()) {
        SimplicialCycle kappa{J, 0, {{VertexSet::singleton(J.max()), 1}, {VertexSet::singleton(i), -1}}};
        auto b = bar_cycle_one(J, i);
        ASSERT_TRUE(verify_bar_cycle(alg, b));
        ASSERT_TRUE(equal_up_to_sign(bar_cycle(K, kappa), b)) << name << " " << to_string(J) << " i=" << i;
      }
    });
  }
  auto P = complexes::polygon(5);
  SimplicialCycle kappa{vs({1, 3}), 0, {{vs({3}), 1}, {vs({1}), -1}}};
  auto b = bar_cycle(P, kappa);
  ASSERT_EQ(b.terms.size(), 1u);
  EXPECT_EQ(b.terms.begin()->first, (std::vector<BarLetter>{{vs({3}), 1}}));
}

TEST(BarCycles, SquareAndPentagonTermCounts) {
  const auto Z = CoefficientRing::integers();
  auto S = complexes::polygon(4);
  PCAlgebra sq(S);
  auto kappa = S.reduced_homology(S.vertices(), Z, 2).cycles.at(0);
  auto b = bar_cycle(S, kappa);
  EXPECT_EQ(nonzero_letter_terms(sq, b), 2u);
  BarElement expected{S.vertices(), 2, {}};
  expected.add({{vs({3}), 1}, {vs({4}), 2}}, 1);
  expected.add({{vs({4}), 2}, {vs({3}), 1}}, -1);
  EXPECT_TRUE(verify_bar_cycle(sq, expected));
  EXPECT_TRUE(expand(sq, b) == expand(sq, expected) || expand(sq, b) == expand(sq, expected.scaled(-1)));

  auto P = complexes::polygon(5);
  PCAlgebra pa(P);
  auto pk = P.reduced_homology(P.vertices(), Z, 2).cycles.at(0);
  EXPECT_EQ(nonzero_letter_terms(pa, bar_cycle(P, pk)), 10u);
}

TEST(BarCycles, DifferentialOnSimpleTensors) {
  PCAlgebra alg(complexes::polygon(4));
  BarElement sq{VertexSet{}, 2, {}};
  sq.add({{VertexSet{}, 1}, {VertexSet{}, 1}}, 1);
  EXPECT_TRUE(verify_bar_cycle(alg, sq));
  BarElement mixed{VertexSet{}, 2, {}};
  mixed.add({{VertexSet{}, 1}, {VertexSet{}, 3}}, 1);
  EXPECT_FALSE(verify_bar_cycle(alg, mixed));
  SimplicialCycle not_cycle{vs({1, 2, 3, 4}), 1, {{vs({1, 2}), 1}}};
  EXPECT_THROW(bar_cycle(complexes::polygon(4), not_cycle), NotACycle);
}
