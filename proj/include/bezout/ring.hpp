#pragma once

// Coefficient rings: coherent strict Bezout rings with a divisibility test.
//
// Four backends are provided: the integers, Z/NZ, F2[Y]/<Y^r> and the
// integers localized at a prime p.  A Ring is a small value describing the
// backend; Elements carry no back-pointer to their ring, so every operation
// goes through the Ring that owns them.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bezout {

// Bit i holds the coefficient of y^i.  Only bits below r are ever set.
struct TruncatedBits {
  mpz_class bits;
  friend bool operator==(const TruncatedBits& a, const TruncatedBits& b) { return a.bits == b.bits; }
};

// Immutable coefficient value.  Integers and Z/N both use mpz_class (for Z/N
// the canonical representative in [0, N-1]); the localized ring uses a
// reduced fraction with positive denominator prime to p.
class Element {
 public:
  using Rep = std::variant<mpz_class, TruncatedBits, mpq_class>;

  Element() : rep_(mpz_class(0)) {}
  explicit Element(mpz_class v) : rep_(std::move(v)) {}
  explicit Element(TruncatedBits v) : rep_(std::move(v)) {}
  explicit Element(mpq_class v) : rep_(std::move(v)) {}

  const Rep& rep() const { return rep_; }
  bool holds_integer() const { return std::holds_alternative<mpz_class>(rep_); }
  bool holds_bits() const { return std::holds_alternative<TruncatedBits>(rep_); }
  bool holds_fraction() const { return std::holds_alternative<mpq_class>(rep_); }
  const mpz_class& integer() const { return std::get<mpz_class>(rep_); }
  const mpz_class& bits() const { return std::get<TruncatedBits>(rep_).bits; }
  const mpq_class& fraction() const { return std::get<mpq_class>(rep_); }

  friend bool operator==(const Element& a, const Element& b) { return a.rep_ == b.rep_; }

 private:
  Rep rep_;
};

enum class RingKind { Integers, IntegersMod, TruncatedF2Y, IntegersLocalized };

struct BezoutResult {
  Element gcd;                       // canonical associate
  std::vector<Element> coefficients;  // gcd = sum coefficients[i] * inputs[i]
};

// b1 = gcd * b1', b2 = gcd * b2', c1 * b1' + c2 * b2' = 1.
struct StrictPair {
  Element gcd;
  Element cofactor1;  // b1'
  Element cofactor2;  // b2'
  Element coeff1;     // c1
  Element coeff2;     // c2
};

// a = quotient * d + remainder, remainder == 0 iff d divides a.
struct EuclidStep {
  Element quotient;
  Element remainder;
};

// a = unit * canonical.
struct UnitNormal {
  Element unit;
  Element canonical;
};

class Ring {
 public:
  static Ring integers();
  static Ring integers_mod(const mpz_class& modulus);
  static Ring truncated_f2y(unsigned nilpotency);
  static Ring localized_at(const mpz_class& prime);

  RingKind kind() const { return kind_; }
  // N for Z/N, p for Z_(p), r for F2[y]/y^r; 0 for Z.
  const mpz_class& parameter() const { return parameter_; }
  unsigned nilpotency() const;

  bool is_domain() const;
  bool has_zerodivisors() const { return !is_domain(); }
  bool is_valuation_ring() const;

  // DSL spelling: "Z", "Z/12", "F2[y]/y^2", "Z_(2)".
  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.parameter_ == b.parameter_;
  }

  // Throws UsageError unless x is a canonical element of this ring.
  void check(const Element& x) const;

  Element zero() const;
  Element one() const;
  Element from_integer(const mpz_class& v) const;
  // The nilpotent generator y of F2[y]/y^r.
  Element nilpotent() const;

  bool is_zero(const Element& a) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;

  // c with b == c * a, or nothing.  With zerodivisors the quotient of smallest
  // canonical representative is returned.
  std::optional<Element> divides(const Element& a, const Element& b) const;
  bool is_unit(const Element& a) const;
  Element inverse(const Element& unit) const;

  BezoutResult gcd_bezout(std::span<const Element> values) const;
  StrictPair strict_pair(const Element& b1, const Element& b2) const;
  // Generator of Ann(a): 1 for a == 0, 0 for regular a.
  Element ann_gen(const Element& a) const;
  EuclidStep euclid_step(const Element& a, const Element& d) const;
  UnitNormal normalize_unit(const Element& a) const;
  Element canonical(const Element& a) const { return normalize_unit(a).canonical; }
  bool associates(const Element& a, const Element& b) const { return canonical(a) == canonical(b); }

  // Text that parses back to the same element: "-3", "11", "3/5", "y + 1".
  std::string format(const Element& a) const;
  // True when format(a) must be parenthesised as a factor.
  bool needs_parentheses(const Element& a) const;

  // Every element of a finite ring, in increasing canonical order.
  std::vector<Element> elements() const;
  bool is_finite() const { return kind_ == RingKind::IntegersMod || kind_ == RingKind::TruncatedF2Y; }

 private:
  Ring(RingKind kind, mpz_class parameter) : kind_(kind), parameter_(std::move(parameter)) {}

  RingKind kind_;
  mpz_class parameter_;
};

}  // namespace bezout
