#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "looppres/simplicial.hpp"

namespace looppres::testing {

struct NamedComplex {
  std::string name;
  SimplicialComplex K;
};

inline SimplicialComplex tree_complex() {
  return SimplicialComplex::clique_complex(7, {{1, 2}, {1, 3}, {2, 4}, {2, 5}, {3, 6}, {6, 7}});
}

/// m-gons for m = 4..8, simplices, disjoint points, trees and the clique
/// complex of the 1-skeleton of the six-vertex RP^2.
inline std::vector<NamedComplex> named_complexes() {
  std::vector<NamedComplex> out;
  for (int m = 4; m <= 8; ++m) out.push_back({std::to_string(m) + "-gon", complexes::polygon(m)});
  for (int m = 1; m <= 5; ++m) out.push_back({"simplex" + std::to_string(m), complexes::simplex(m)});
  for (int m = 1; m <= 5; ++m) out.push_back({"points" + std::to_string(m), complexes::points(m)});
  out.push_back({"path5", complexes::path(5)});
  out.push_back({"star5", complexes::star(5)});
  out.push_back({"tree7", tree_complex()});
  out.push_back({"rp2-skeleton-clique", complexes::rp2().clique_of_skeleton()});
  return out;
}

/// Clique complexes of random graphs with 3..max_m vertices, fixed seed.
inline std::vector<NamedComplex> random_flag_complexes(int count = 50, int max_m = 7, unsigned seed = 20240611) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> size(3, max_m);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const double densities[] = {0.3, 0.45, 0.6, 0.75};
  std::vector<NamedComplex> out;
  for (int k = 0; k < count; ++k) {
    const int m = size(rng);
    const double p = densities[k % 4];
    std::vector<std::pair<int, int>> edges;
    for (int a = 1; a <= m; ++a)
      for (int b = a + 1; b <= m; ++b)
        if (coin(rng) < p) edges.emplace_back(a, b);
    out.push_back({"random" + std::to_string(k), SimplicialComplex::clique_complex(m, edges)});
  }
  return out;
}

inline std::vector<NamedComplex> full_corpus(int max_m = 7) {
  auto out = named_complexes();
  for (auto& c : random_flag_complexes(50, max_m)) out.push_back(std::move(c));
  return out;
}

}  // namespace looppres::testing
