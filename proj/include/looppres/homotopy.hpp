#pragma once

// Sphere decomposition of ΩZ_K for flag K: the polynomial identity
// -Σ χ̃(K_J) t^|J| = (1+t)^{m-d} h_K(-t), multiplicities D_n with
// P = Π_{n≥3} (1 - t^{n-1})^{D_n}, the loop Poincaré series 1/P and
// rational homotopy ranks.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/exactlin.hpp"
#include "looppres/simplicial.hpp"

namespace looppres {

/// Dense integer polynomial or truncated series, coefficient k at index k.
using Series = std::vector<Integer>;

namespace series {

inline Series trimmed(Series a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
  return a;
}

inline Series truncated(Series a, std::size_t N) {
  a.resize(N + 1, Integer(0));
  return a;
}

/// a·b, truncated to degree N when N is given.
inline Series multiply(const Series& a, const Series& b, std::size_t N = static_cast<std::size_t>(-1)) {
  if (a.empty() || b.empty()) return {};
  std::size_t len = a.size() + b.size() - 1;
  if (N != static_cast<std::size_t>(-1)) len = std::min(len, N + 1);
  Series out(len, Integer(0));
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Series power(const Series& a, int e, std::size_t N = static_cast<std::size_t>(-1)) {
  Series out{Integer(1)};
  for (int k = 0; k < e; ++k) out = multiply(out, a, N);
  return out;
}

/// 1/a mod t^{N+1}; needs a[0] = ±1.
inline Series inverse(const Series& a, std::size_t N) {
  if (a.empty() || abs(a[0]) != 1) throw PreconditionViolated("series inverse needs constant term ±1");
  Series out(N + 1, Integer(0));
  for (std::size_t k = 0; k <= N; ++k) {
    Integer s = k == 0 ? Integer(1) : Integer(0);
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s -= a[j] * out[k - j];
    out[k] = s * a[0];
  }
  return out;
}

/// (1 - t^k)^e mod t^{N+1}, for any integer e.
inline Series one_minus_power(int k, const Integer& e, std::size_t N) {
  Series out(N + 1, Integer(0));
  // generalized binomial: coefficient of t^{kj} is (-1)^j C(e, j)
  Integer c = 1;
  for (std::size_t j = 0; j * static_cast<std::size_t>(k) <= N; ++j) {
    out[j * static_cast<std::size_t>(k)] = c;
    c = -c * (e - Integer(static_cast<long>(j))) / Integer(static_cast<long>(j + 1));
  }
  return out;
}

inline std::string to_string(const Series& a, const std::string& var = "t") {
  std::string out;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (sgn(a[k]) == 0) continue;
    const bool neg = sgn(a[k]) < 0;
    Integer c = abs(a[k]);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (c != 1 || k == 0) out += c.get_str();
    if (k > 0) out += var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return out.empty() ? "0" : out;
}

}  // namespace series

struct EulerIdentity {
  Series lhs;  ///< -Σ_J χ̃(K_J) t^|J|
  Series rhs;  ///< (1+t)^{m-d} h_K(-t)
  bool equal = false;
};

inline void require_flag(const SimplicialComplex& K) {
  auto check = K.is_flag();
  if (!check.flag) throw NotFlag("complex is not flag; minimal non-face " + to_string(*check.witness));
}

inline EulerIdentity euler_identity_check(const SimplicialComplex& K) {
  require_flag(K);
  EulerIdentity out;
  for (const auto& c : K.reduced_euler_polynomial()) out.lhs.push_back(-c);
  out.lhs = series::trimmed(out.lhs);
  auto fh = K.f_h_vectors();
  Series h_neg;
  for (std::size_t k = 0; k < fh.h.size(); ++k) h_neg.push_back(k % 2 ? Integer(-fh.h[k]) : fh.h[k]);
  out.rhs = series::trimmed(series::multiply(series::power({1, 1}, K.m() - fh.d), h_neg));
  out.equal = out.lhs == out.rhs;
  return out;
}

/// D_n for 3 ≤ n ≤ N+1 with Π (1 - t^{n-1})^{D_n} ≡ P mod t^{N+1}.
inline std::map<int, Integer> sphere_multiplicities(const Series& P, int N) {
  if (N < 1) throw PreconditionViolated("cutoff must be at least 1");
  const std::size_t n = static_cast<std::size_t>(N);
  Series run = series::truncated(P, n);
  if (run[0] != 1) throw PreconditionViolated("P(0) must be 1");
  if (n >= 1 && sgn(run[1]) != 0) throw PreconditionViolated("P must be 1 mod t^2");
  std::map<int, Integer> D;
  for (int k = 2; k <= N; ++k) {
    const Integer d = -run[static_cast<std::size_t>(k)];
    if (sgn(d) < 0)
      throw NegativeMultiplicity("D_" + std::to_string(k + 1) + " = " + d.get_str() + " is negative");
    D[k + 1] = d;
    if (sgn(d) != 0) run = series::multiply(run, series::one_minus_power(k, -d, n), n);
  }
  return D;
}

/// Π_n (1 - t^{n-1})^{D_n} mod t^{N+1}.
inline Series product_expansion(const std::map<int, Integer>& D, int N) {
  Series out = series::truncated({1}, static_cast<std::size_t>(N));
  for (const auto& [n, d] : D)
    if (sgn(d) != 0) out = series::multiply(out, series::one_minus_power(n - 1, d, N), static_cast<std::size_t>(N));
  return out;
}

inline Series loop_poincare_series(const SimplicialComplex& K, int N) {
  auto id = euler_identity_check(K);
  return series::inverse(id.rhs, static_cast<std::size_t>(N));
}

/// rank of π_N(S^n) ⊗ Q.
inline int serre_rank(int N, int n) { return (N == n ? 1 : 0) + (n % 2 == 0 && N == 2 * n - 1 ? 1 : 0); }

/// rank π_N(Z_K) ⊗ Q for 1 ≤ N ≤ cutoff.
inline std::map<int, Integer> rational_homotopy_ranks(const std::map<int, Integer>& D, int N) {
  std::map<int, Integer> out;
  for (int k = 1; k <= N; ++k) {
    Integer r = 0;
    for (const auto& [n, d] : D) r += d * serre_rank(k, n);
    out[k] = r;
  }
  return out;
}

struct MultiplicityReport {
  int cutoff = 16;
  EulerIdentity identity;
  Series P;
  std::map<int, Integer> D;
  Series poincare;
  std::map<int, Integer> rational_ranks;
  bool product_matches = false;  ///< Π (1 - t^{n-1})^{D_n} ≡ P mod t^{N+1}
};

inline MultiplicityReport multiplicity_report(const SimplicialComplex& K, int N = 16) {
  MultiplicityReport rep;
  rep.cutoff = N;
  rep.identity = euler_identity_check(K);
  rep.P = rep.identity.rhs;
  rep.D = sphere_multiplicities(rep.P, N);
  rep.poincare = series::inverse(rep.P, static_cast<std::size_t>(N));
  rep.rational_ranks = rational_homotopy_ranks(rep.D, N);
  rep.product_matches = product_expansion(rep.D, N) == series::truncated(rep.P, static_cast<std::size_t>(N));
  return rep;
}

}  // namespace looppres
