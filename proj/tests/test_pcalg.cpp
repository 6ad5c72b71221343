#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <random>
#include <set>

#include "corpus.hpp"
#include "looppres/homotopy.hpp"
#include "looppres/pcalg.hpp"

using namespace looppres;
using looppres::testing::full_corpus;

namespace {

VertexSet vs(std::initializer_list<int> v) {
  VertexSet s;
  for (int x : v) s = s.with(x);
  return s;
}

// Explores the whole class of w under signed swaps of adjacent K-adjacent
// letters. Zero iff the class contains a square u_i u_i or a word with both signs.
std::optional<NormalWord> brute_force_normal(const SimplicialComplex& K, const PCWord& w) {
  std::map<PCWord, int> seen{{w, 1}};
  std::deque<PCWord> queue{w};
  while (!queue.empty()) {
    PCWord x = queue.front();
    queue.pop_front();
    const int s = seen[x];
    for (std::size_t p = 0; p + 1 < x.size(); ++p) {
      if (x[p] == x[p + 1]) return std::nullopt;
      if (!K.is_edge(x[p], x[p + 1])) continue;
      PCWord y = x;
      std::swap(y[p], y[p + 1]);
      auto it = seen.find(y);
      if (it == seen.end()) {
        seen[y] = -s;
        queue.push_back(y);
      } else if (it->second != -s) {
        return std::nullopt;
      }
    }
  }
  const auto& [word, sign] = *seen.begin();
  return NormalWord{sign, word};
}

}  // namespace

TEST(PCAlgebra, RejectsNonFlag) {
  EXPECT_THROW(PCAlgebra(complexes::hollow_triangle()), NotFlag);
}

TEST(PCAlgebra, DefiningRelations) {
  PCAlgebra A(complexes::polygon(4));
  EXPECT_TRUE((A.u(1) * A.u(1)).is_zero());
  EXPECT_EQ(A.u(2) * A.u(1), A.u(1) * A.u(2).scaled(-1));
  EXPECT_NE(A.u(3) * A.u(1), (A.u(1) * A.u(3)).scaled(-1));
  EXPECT_TRUE(commutator(A.u(1), A.u(2)).is_zero());
  EXPECT_FALSE(commutator(A.u(1), A.u(3)).is_zero());
  EXPECT_THROW(A.normalize(make_pcword({5})), VertexOutOfRange);
  PCAlgebra B(complexes::polygon(4));
  EXPECT_THROW(A.u(1) * B.u(1), AlgebraMismatch);
}

TEST(PCAlgebra, NormalFormMatchesTraceClassSearch) {
  std::mt19937 rng(9);
  for (const auto& [name, K] : full_corpus(6)) {
    PCAlgebra A(K);
    for (int trial = 0; trial < 60; ++trial) {
      const int len = static_cast<int>(rng() % 7);
      std::vector<int> letters;
      for (int k = 0; k < len; ++k) letters.push_back(1 + static_cast<int>(rng() % K.m()));
      const PCWord w = make_pcword(letters);
      ASSERT_EQ(A.normalize(w), brute_force_normal(K, w)) << name << " " << pcword_to_string(w);
    }
  }
}

TEST(PCAlgebra, GradedDimensionsCountTraceClasses) {
  for (const auto& K : {complexes::polygon(4), complexes::polygon(5), complexes::path(4), complexes::points(3)}) {
    PCAlgebra A(K);
    auto dims = A.graded_dimensions(4);
    for (int len = 0; len <= 4; ++len) {
      std::set<PCWord> classes;
      std::vector<int> letters(static_cast<std::size_t>(len), 1);
      while (true) {
        if (auto nf = brute_force_normal(K, make_pcword(letters))) classes.insert(nf->word);
        int p = len - 1;
        while (p >= 0 && letters[p] == K.m()) letters[p--] = 1;
        if (p < 0) break;
        ++letters[p];
      }
      ASSERT_EQ(dims[static_cast<std::size_t>(len)], classes.size()) << "length " << len;
    }
  }
}

TEST(PCAlgebra, HilbertSeriesMatchesHVector) {
  // dims of k[K]^! = (1+t)^d / h_K(-t), and dividing by (1+t)^m gives the loop homology series
  for (const auto& [name, K] : full_corpus()) {
    PCAlgebra A(K);
    auto dims = A.graded_dimensions(8);
    auto fh = K.f_h_vectors();
    Series h_neg;
    for (std::size_t k = 0; k < fh.h.size(); ++k) h_neg.push_back(k % 2 ? Integer(-fh.h[k]) : fh.h[k]);
    auto expected = series::multiply(series::power({1, 1}, fh.d), series::inverse(h_neg, 8), 8);
    ASSERT_EQ(dims, series::truncated(expected, 8)) << name;
    auto loop = series::multiply(dims, series::inverse(series::power({1, 1}, K.m()), 8), 8);
    ASSERT_EQ(loop, loop_poincare_series(K, 8)) << name;
  }
}

TEST(PCAlgebra, NestedCommutatorsAndEvaluation) {
  PCAlgebra A(complexes::polygon(5));
  EXPECT_TRUE(A.c_element(vs({1}), 2).is_zero());
  EXPECT_FALSE(A.c_element(vs({2, 4}), 1).is_zero());
  EXPECT_EQ(A.c_element(vs({2, 4}), 1), commutator(A.u(2), commutator(A.u(4), A.u(1))));
  auto p = FreePolynomial::gptw(vs({1, 2, 4}), 1) * FreePolynomial::atom(3);
  EXPECT_EQ(A.evaluate_gptw(p), A.c_element(vs({2, 4}), 1) * A.u(3));
  EXPECT_THROW(A.evaluate(p), UnboundSymbol);
  EXPECT_THROW(A.evaluate(FreePolynomial::atom(1, CoefficientRing::prime_field(2))), RingMismatch);
}

TEST(PCAlgebra, PrimeFieldCoefficients) {
  PCAlgebra A(complexes::polygon(4), CoefficientRing::prime_field(2));
  auto x = A.u(1) * A.u(3);
  EXPECT_TRUE((x + x).is_zero());
  EXPECT_EQ(commutator(A.u(1), A.u(3)), A.u(1) * A.u(3) + A.u(3) * A.u(1));
}
