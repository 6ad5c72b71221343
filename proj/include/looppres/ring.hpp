#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "looppres/errors.hpp"

namespace looppres {

using Integer = mpz_class;
using Rational = mpq_class;

enum class RingKind { Integers, Rationals, PrimeField };

/// Coefficient ring k in {Z, Q, Z/p}.
///
/// Algebra-level values (free polynomials, elements of k[K]^!) keep integer
/// coefficients; reduce() maps them to the canonical representative of k.
/// Over Q no reduction is needed because every object is built from integer
/// data and rescaling by a nonzero rational is a unit change.
class CoefficientRing {
 public:
  static CoefficientRing integers() { return CoefficientRing(RingKind::Integers, 0); }
  static CoefficientRing rationals() { return CoefficientRing(RingKind::Rationals, 0); }
  static CoefficientRing prime_field(std::int64_t p) {
    if (!is_prime(p)) throw PreconditionViolated("F_p needs a prime p, got " + std::to_string(p));
    return CoefficientRing(RingKind::PrimeField, p);
  }

  RingKind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != RingKind::Integers; }

  /// Symmetric residue in (-p/2, p/2] over F_p; identity otherwise.
  void reduce(Integer& x) const {
    if (kind_ != RingKind::PrimeField) return;
    Integer p(static_cast<long>(p_));
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    if (2 * x > p) x -= p;
  }
  Integer reduced(Integer x) const {
    reduce(x);
    return x;
  }
  bool is_zero(const Integer& x) const {
    if (kind_ != RingKind::PrimeField) return sgn(x) == 0;
    return mpz_divisible_ui_p(x.get_mpz_t(), static_cast<unsigned long>(p_)) != 0;
  }

  std::string name() const {
    switch (kind_) {
      case RingKind::Integers: return "Z";
      case RingKind::Rationals: return "Q";
      case RingKind::PrimeField: return "F" + std::to_string(p_);
    }
    return "?";
  }

  /// Accepts "Z", "Q", "F<p>" (also "Fp<p>", "Z/<p>").
  static CoefficientRing parse(const std::string& text) {
    if (text == "Z" || text == "ZZ") return integers();
    if (text == "Q" || text == "QQ") return rationals();
    std::string digits;
    if (text.rfind("Fp", 0) == 0) digits = text.substr(2);
    else if (text.rfind("F", 0) == 0) digits = text.substr(1);
    else if (text.rfind("Z/", 0) == 0) digits = text.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("unknown ring '" + text + "' (expected Z, Q or F<p>)");
    return prime_field(std::stoll(digits));
  }

  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

 private:
  CoefficientRing(RingKind kind, std::int64_t p) : kind_(kind), p_(p) {}

  static bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

  RingKind kind_;
  std::int64_t p_;
};

inline std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) throw PreconditionViolated("integer does not fit in 64 bits: " + x.get_str());
  return x.get_si();
}

}  // namespace looppres
