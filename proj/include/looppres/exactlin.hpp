#pragma once

// Exact linear algebra over Z, Q and Z/p: Smith normal form with transforms,
// cokernel invariants (gen/rel of a module over a PID) and homology of a
// two-term complex with lifted cycle representatives.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "looppres/errors.hpp"
#include "looppres/ring.hpp"

namespace looppres {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw PreconditionViolated("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

inline IntMatrix zero_int_matrix(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols, Integer(0)); }

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionViolated("matrix product dimension mismatch");
  IntMatrix out(a.rows(), b.cols(), Integer(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace domain {

/// Euclidean domain Z.
struct Integers {
  using value_type = Integer;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& x) const { return x; }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return a == 1 || a == -1; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  Integer norm(const value_type& a) const { return abs(a); }
  /// Truncated quotient; |remainder| < |b|.
  value_type quotient(const value_type& a, const value_type& b) const {
    value_type q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  }
  bool divides(const value_type& a, const value_type& b) const {
    if (sgn(a) == 0) return sgn(b) == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }
  /// Unit u with u*a canonical (nonnegative).
  value_type normalizing_unit(const value_type& a) const { return sgn(a) < 0 ? -1 : 1; }
  value_type unit_inverse(const value_type& u) const { return u; }
};

/// The field Q.
struct Rationals {
  using value_type = Rational;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_integer(const Integer& x) const { return Rational(x); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_unit(const value_type& a) const { return sgn(a) != 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  Integer norm(const value_type& a) const { return sgn(a) == 0 ? 0 : 1; }
  value_type quotient(const value_type& a, const value_type& b) const { return a / b; }
  bool divides(const value_type& a, const value_type& b) const { return sgn(a) != 0 || sgn(b) == 0; }
  value_type normalizing_unit(const value_type& a) const { return 1 / a; }
  value_type unit_inverse(const value_type& u) const { return 1 / u; }
};

/// The field Z/p with values in [0, p).
struct PrimeField {
  using value_type = std::int64_t;
  std::int64_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from_integer(const Integer& x) const {
    Integer r;
    Integer pp(static_cast<long>(p));
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
    return r.get_si();
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_unit(value_type a) const { return a != 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p; }
  value_type sub(value_type a, value_type b) const { return ((a - b) % p + p) % p; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>((static_cast<__int128>(a) * b) % p);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  Integer norm(value_type a) const { return a == 0 ? 0 : 1; }
  value_type quotient(value_type a, value_type b) const { return mul(a, inverse(b)); }
  bool divides(value_type a, value_type b) const { return a != 0 || b == 0; }
  value_type normalizing_unit(value_type a) const { return inverse(a); }
  value_type unit_inverse(value_type u) const { return inverse(u); }

  value_type inverse(value_type a) const {
    // Fermat: a^(p-2)
    value_type result = 1 % p, base = a % p;
    std::int64_t e = p - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }
};

}  // namespace domain

/// U * M * V = D with U, V invertible over the domain (unimodular over Z);
/// the inverses are tracked alongside.
template <class Dom>
struct SmithForm {
  using value_type = typename Dom::value_type;
  Matrix<value_type> U, Uinv, D, V, Vinv;
  std::size_t rank = 0;  ///< number of nonzero diagonal entries
  std::vector<value_type> diagonal() const {
    std::vector<value_type> out;
    for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
    return out;
  }
};

namespace detail {

template <class Dom>
class SmithReducer {
 public:
  using T = typename Dom::value_type;

  SmithReducer(const Matrix<T>& m, const Dom& dom) : dom_(dom) {
    f_.D = m;
    f_.U = Matrix<T>::identity(m.rows(), dom.zero(), dom.one());
    f_.Uinv = f_.U;
    f_.V = Matrix<T>::identity(m.cols(), dom.zero(), dom.one());
    f_.Vinv = f_.V;
  }

  SmithForm<Dom> run() {
    Matrix<T>& a = f_.D;
    const std::size_t limit = std::min(a.rows(), a.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      auto pivot = find_pivot(t);
      if (!pivot) break;
      move_to(t, pivot->first, pivot->second);
      while (true) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < a.rows(); ++i) {
          if (dom_.is_zero(a(i, t))) continue;
          row_axpy(i, t, dom_.neg(dom_.quotient(a(i, t), a(t, t))));
          if (!dom_.is_zero(a(i, t))) dirty = true;
        }
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (dom_.is_zero(a(t, j))) continue;
          col_axpy(j, t, dom_.neg(dom_.quotient(a(t, j), a(t, t))));
          if (!dom_.is_zero(a(t, j))) dirty = true;
        }
        if (dirty) {
          // A remainder smaller than the pivot survived: promote it.
          std::size_t br = t, bc = t;
          Integer best = dom_.norm(a(t, t));
          for (std::size_t i = t + 1; i < a.rows(); ++i)
            if (!dom_.is_zero(a(i, t)) && dom_.norm(a(i, t)) < best) best = dom_.norm(a(i, t)), br = i, bc = t;
          for (std::size_t j = t + 1; j < a.cols(); ++j)
            if (!dom_.is_zero(a(t, j)) && dom_.norm(a(t, j)) < best) best = dom_.norm(a(t, j)), br = t, bc = j;
          move_to(t, br, bc);
          continue;
        }
        // Divisibility: the pivot must divide the remaining block.
        bool fixed = false;
        for (std::size_t i = t + 1; i < a.rows() && !fixed; ++i)
          for (std::size_t j = t + 1; j < a.cols() && !fixed; ++j)
            if (!dom_.divides(a(t, t), a(i, j))) {
              row_axpy(t, i, dom_.one());
              fixed = true;
            }
        if (!fixed) break;
      }
      T u = dom_.normalizing_unit(a(t, t));
      row_scale(t, u);
    }
    f_.rank = t;
    return std::move(f_);
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> find_pivot(std::size_t t) const {
    const Matrix<T>& a = f_.D;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_norm;
    for (std::size_t i = t; i < a.rows(); ++i)
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (dom_.is_zero(a(i, j))) continue;
        Integer n = dom_.norm(a(i, j));
        if (!best || n < best_norm) best = std::make_pair(i, j), best_norm = n;
      }
    return best;
  }

  void move_to(std::size_t t, std::size_t r, std::size_t c) {
    if (r != t) {
      f_.D.swap_rows(t, r);
      f_.U.swap_rows(t, r);
      f_.Uinv.swap_cols(t, r);
    }
    if (c != t) {
      f_.D.swap_cols(t, c);
      f_.V.swap_cols(t, c);
      f_.Vinv.swap_rows(t, c);
    }
  }

  // row_i += q * row_src
  void row_axpy(std::size_t i, std::size_t src, const T& q) {
    for (std::size_t c = 0; c < f_.D.cols(); ++c) f_.D(i, c) = dom_.add(f_.D(i, c), dom_.mul(q, f_.D(src, c)));
    for (std::size_t c = 0; c < f_.U.cols(); ++c) f_.U(i, c) = dom_.add(f_.U(i, c), dom_.mul(q, f_.U(src, c)));
    // Uinv <- Uinv * (I - q e_i e_src^T): col_src -= q col_i
    for (std::size_t r = 0; r < f_.Uinv.rows(); ++r)
      f_.Uinv(r, src) = dom_.sub(f_.Uinv(r, src), dom_.mul(q, f_.Uinv(r, i)));
  }

  // col_j += q * col_src
  void col_axpy(std::size_t j, std::size_t src, const T& q) {
    for (std::size_t r = 0; r < f_.D.rows(); ++r) f_.D(r, j) = dom_.add(f_.D(r, j), dom_.mul(q, f_.D(r, src)));
    for (std::size_t r = 0; r < f_.V.rows(); ++r) f_.V(r, j) = dom_.add(f_.V(r, j), dom_.mul(q, f_.V(r, src)));
    // Vinv <- (I - q e_src e_j^T) * Vinv: row_src -= q row_j
    for (std::size_t c = 0; c < f_.Vinv.cols(); ++c)
      f_.Vinv(src, c) = dom_.sub(f_.Vinv(src, c), dom_.mul(q, f_.Vinv(j, c)));
  }

  void row_scale(std::size_t i, const T& u) {
    if (u == dom_.one()) return;
    T uinv = dom_.unit_inverse(u);
    for (std::size_t c = 0; c < f_.D.cols(); ++c) f_.D(i, c) = dom_.mul(u, f_.D(i, c));
    for (std::size_t c = 0; c < f_.U.cols(); ++c) f_.U(i, c) = dom_.mul(u, f_.U(i, c));
    for (std::size_t r = 0; r < f_.Uinv.rows(); ++r) f_.Uinv(r, i) = dom_.mul(f_.Uinv(r, i), uinv);
  }

  Dom dom_;
  SmithForm<Dom> f_;
};

template <class Dom>
Matrix<typename Dom::value_type> convert(const IntMatrix& m, const Dom& dom) {
  Matrix<typename Dom::value_type> out(m.rows(), m.cols(), dom.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = dom.from_integer(m(i, j));
  return out;
}

}  // namespace detail

/// Smith normal form over an arbitrary supported domain.
///
/// Pivot choice: nonzero entry of least norm, lowest row then lowest column.
/// Diagonal entries are normalized (nonnegative over Z, 1 over a field).
template <class Dom>
SmithForm<Dom> smith_normal_form(const Matrix<typename Dom::value_type>& m, const Dom& dom) {
  return detail::SmithReducer<Dom>(m, dom).run();
}

/// Smith normal form of an integer matrix.
inline SmithForm<domain::Integers> smith_normal_form(const IntMatrix& m) {
  return smith_normal_form(m, domain::Integers{});
}

/// Invariants of a finitely generated module over a PID.
///
/// Generators, when present, are listed free ones first and then one per
/// torsion factor; generator_orders holds 0 for free generators and d_i for
/// the torsion ones.
struct ModuleInvariants {
  std::size_t rank = 0;
  std::vector<Integer> torsion;  ///< d_1 | d_2 | ..., no units, no zeros
  std::vector<std::vector<Integer>> generators;
  std::vector<Integer> generator_orders;

  std::size_t gen() const { return rank + torsion.size(); }
  std::size_t rel() const { return torsion.size(); }
  bool is_zero() const { return gen() == 0; }
};

/// gen/rel of a module.
struct GenRel {
  std::size_t gen = 0;
  std::size_t rel = 0;
  friend bool operator==(const GenRel&, const GenRel&) = default;
};

namespace detail {

template <class Dom>
GenRel cokernel_gen_rel(const IntMatrix& presentation, const Dom& dom) {
  auto snf = smith_normal_form(convert(presentation, dom), dom);
  GenRel out;
  out.gen = presentation.rows() - snf.rank;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (!dom.is_unit(snf.D(i, i))) ++out.gen, ++out.rel;
  return out;
}

inline Integer to_integer(const Integer& x) { return x; }

// Integer lift of a domain vector: Z as is, Q rescaled to a primitive integer
// vector, F_p as symmetric residues.
inline std::vector<Integer> lift_vector(const std::vector<Integer>& v, const domain::Integers&) { return v; }

inline std::vector<Integer> lift_vector(const std::vector<Rational>& v, const domain::Rationals&) {
  Integer lcm_den = 1;
  for (const auto& x : v) lcm_den = lcm(lcm_den, x.get_den());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (lcm_den / x.get_den());
    g = gcd(g, n);
    out.push_back(n);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline std::vector<Integer> lift_vector(const std::vector<std::int64_t>& v, const domain::PrimeField& f) {
  std::vector<Integer> out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(2 * x > f.p ? x - f.p : x));
  return out;
}

inline Integer lift_scalar(const Integer& x, const domain::Integers&) { return x; }
inline Integer lift_scalar(const Rational&, const domain::Rationals&) { return 0; }
inline Integer lift_scalar(std::int64_t, const domain::PrimeField&) { return 0; }

template <class Dom>
ModuleInvariants homology(const IntMatrix& d1, const IntMatrix& d2, const Dom& dom) {
  using T = typename Dom::value_type;
  const std::size_t n = d1.cols();
  auto a = convert(d1, dom);
  auto b = convert(d2, dom);

  // d1 * d2 == 0 over the domain
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = dom.zero();
      for (std::size_t k = 0; k < n; ++k) acc = dom.add(acc, dom.mul(a(i, k), b(k, j)));
      if (!dom.is_zero(acc)) throw ChainConditionViolated("d1 * d2 != 0");
    }

  auto s1 = smith_normal_form(a, dom);
  const std::size_t r = s1.rank;
  const std::size_t k = n - r;  // rank of ker d1

  // Coordinates of im d2 in the kernel basis (columns r.. of V).
  Matrix<T> coords(k, b.cols(), dom.zero());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = dom.zero();
      for (std::size_t l = 0; l < n; ++l) acc = dom.add(acc, dom.mul(s1.Vinv(r + i, l), b(l, j)));
      coords(i, j) = acc;
    }
  auto s2 = smith_normal_form(coords, dom);

  ModuleInvariants inv;
  inv.rank = k - s2.rank;
  // Basis of the kernel adapted to the image: Z * Uinv'.
  auto kernel_vector = [&](std::size_t col) {
    std::vector<T> v(n, dom.zero());
    for (std::size_t l = 0; l < n; ++l) {
      T acc = dom.zero();
      for (std::size_t i = 0; i < k; ++i) acc = dom.add(acc, dom.mul(s1.V(l, r + i), s2.Uinv(i, col)));
      v[l] = acc;
    }
    return lift_vector(v, dom);
  };
  for (std::size_t col = s2.rank; col < k; ++col) {
    inv.generators.push_back(kernel_vector(col));
    inv.generator_orders.emplace_back(0);
  }
  for (std::size_t i = 0; i < s2.rank; ++i) {
    if (dom.is_unit(s2.D(i, i))) continue;
    Integer d = lift_scalar(s2.D(i, i), dom);
    inv.torsion.push_back(d);
    inv.generators.push_back(kernel_vector(i));
    inv.generator_orders.push_back(d);
  }
  return inv;
}

}  // namespace detail

/// gen/rel of coker(presentation) where the columns are relations among the
/// row-indexed generators.
inline GenRel module_gen_rel(const IntMatrix& presentation, const CoefficientRing& ring) {
  switch (ring.kind()) {
    case RingKind::Integers: return detail::cokernel_gen_rel(presentation, domain::Integers{});
    case RingKind::Rationals: return detail::cokernel_gen_rel(presentation, domain::Rationals{});
    case RingKind::PrimeField: return detail::cokernel_gen_rel(presentation, domain::PrimeField{ring.characteristic()});
  }
  return {};
}

/// Invariants of ker d1 / im d2 with generators lifted to ker d1.
///
/// d1 is a x n, d2 is n x c. Over Q the generators are primitive integer
/// vectors, over F_p they are symmetric residues.
inline ModuleInvariants homology_with_representatives(const IntMatrix& d1, const IntMatrix& d2,
                                                      const CoefficientRing& ring) {
  if (d1.cols() != d2.rows())
    throw PreconditionViolated("homology: d1 has " + std::to_string(d1.cols()) + " columns but d2 has " +
                               std::to_string(d2.rows()) + " rows");
  switch (ring.kind()) {
    case RingKind::Integers: return detail::homology(d1, d2, domain::Integers{});
    case RingKind::Rationals: return detail::homology(d1, d2, domain::Rationals{});
    case RingKind::PrimeField: return detail::homology(d1, d2, domain::PrimeField{ring.characteristic()});
  }
  return {};
}

/// Determinant of a square integer matrix (fraction-free Bareiss).
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw PreconditionViolated("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(m(swap_row, k)) == 0) ++swap_row;
      if (swap_row == n) return 0;
      m.swap_rows(k, swap_row);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j));
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace looppres
