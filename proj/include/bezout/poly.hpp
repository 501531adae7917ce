#pragma once

// Module monomials, terms and vectors of H_m = R[X_1..X_n]^m, plus the
// monomial orders used on them (TOP over lex, and Schreyer orders induced by
// a list of images).

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bezout/ring.hpp"

namespace bezout {

using Exponents = std::vector<std::uint32_t>;

// Componentwise sum; throws UsageError on overflow.
Exponents add_exponents(const Exponents& a, const Exponents& b);
// b - a when a divides b.
std::optional<Exponents> exponent_quotient(const Exponents& a, const Exponents& b);
Exponents lcm_exponents(const Exponents& a, const Exponents& b);
bool is_constant(const Exponents& a);
// (a - b)^+
Exponents positive_difference(const Exponents& a, const Exponents& b);
// Componentwise max with 0.
Exponents positive_part(std::span<const long long> alpha);

// X^alpha e_position.  Positions are 0-based here and printed 1-based.
struct ModuleMonomial {
  Exponents exponents;
  std::size_t position = 0;
  friend bool operator==(const ModuleMonomial&, const ModuleMonomial&) = default;
};

// Quotient N / M as a ring monomial when M divides N.
std::optional<Exponents> mono_divides(const ModuleMonomial& m, const ModuleMonomial& n);

struct Term {
  Element coeff;
  ModuleMonomial mono;
  friend bool operator==(const Term&, const Term&) = default;
};

// c X^gamma, used for cofactors and quotients.  The coefficient may be zero.
struct RingTerm {
  Element coeff;
  Exponents exponents;
  friend bool operator==(const RingTerm&, const RingTerm&) = default;
};

std::optional<RingTerm> term_divides(const Ring& ring, const Term& t, const Term& u);

struct Space {
  Ring ring = Ring::integers();
  std::size_t nvars = 0;
  std::size_t rank = 1;
  friend bool operator==(const Space&, const Space&) = default;
};

class ModuleVector;
class MonomialOrder;
using OrderPtr = std::shared_ptr<const MonomialOrder>;

class MonomialOrder : public std::enable_shared_from_this<MonomialOrder> {
 public:
  enum class Kind { TopLex, Schreyer };

  // priority[0] is the greatest variable.  Empty means identity.
  static OrderPtr top_lex(Space space, std::vector<std::size_t> priority = {});
  // Order on R[X]^p induced by the images g_1..g_p (all nonzero, same order).
  static OrderPtr schreyer(std::vector<ModuleVector> images);

  Kind kind() const { return kind_; }
  const Space& space() const { return space_; }
  const Ring& ring() const { return space_.ring; }
  const std::vector<std::size_t>& priority() const { return priority_; }
  const std::vector<ModuleVector>& images() const { return *images_; }
  // Order the images live in; null for TOP-lex.
  const OrderPtr& parent() const { return parent_; }
  // Rank-1 TOP-lex order of the underlying ring monomial order.
  OrderPtr polynomial_order() const;
  // Same ring monomial order on a different rank.
  OrderPtr top_lex_with_rank(std::size_t rank) const;

  // Negative, zero or positive.
  int compare(const ModuleMonomial& a, const ModuleMonomial& b) const;
  int compare_exponents(const Exponents& a, const Exponents& b) const;

  bool same_as(const MonomialOrder& other) const;
  std::string describe() const;

 private:
  MonomialOrder() = default;

  Kind kind_ = Kind::TopLex;
  Space space_;
  std::vector<std::size_t> priority_;
  std::shared_ptr<const std::vector<ModuleVector>> images_;
  std::vector<ModuleMonomial> image_lms_;
  OrderPtr parent_;
  OrderPtr polynomial_order_;  // null when this order already is one
};

bool same_order(const OrderPtr& a, const OrderPtr& b);

// Multidegree with a minus-infinity sentinel for the zero vector.
struct MultiDegree {
  bool minus_infinity = true;
  Exponents exponents;
  friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
};

// Element of H_m: terms strictly descending under the attached order, no zero
// coefficients.  The empty list is the zero vector.
class ModuleVector {
 public:
  explicit ModuleVector(OrderPtr order) : order_(std::move(order)) {}

  // Sorts, merges equal monomials and drops zeros.
  static ModuleVector from_terms(OrderPtr order, std::vector<Term> terms);
  static ModuleVector constant(OrderPtr order, const Element& c, std::size_t position = 0);
  static ModuleVector unit_vector(OrderPtr order, std::size_t position);

  const std::vector<Term>& terms() const { return terms_; }
  const OrderPtr& order() const { return order_; }
  const Space& space() const { return order_->space(); }
  const Ring& ring() const { return order_->ring(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Term& leading_term() const;
  const ModuleMonomial& leading_monomial() const { return leading_term().mono; }
  const Element& leading_coefficient() const { return leading_term().coeff; }
  std::size_t leading_position() const;
  MultiDegree mdeg() const;

  ModuleVector add(const ModuleVector& other) const;
  ModuleVector sub(const ModuleVector& other) const;
  ModuleVector neg() const;
  ModuleVector scaled(const Element& c) const;
  ModuleVector shifted(const Exponents& gamma) const;
  // c X^gamma * this
  ModuleVector times(const RingTerm& t) const;
  ModuleVector reordered(OrderPtr order) const;
  // Component at a position, as a polynomial under polynomial_order().
  ModuleVector component(std::size_t position) const;

  friend bool operator==(const ModuleVector& a, const ModuleVector& b);

 private:
  ModuleVector(OrderPtr order, std::vector<Term> sorted) : order_(std::move(order)), terms_(std::move(sorted)) {}
  void require_same_order(const ModuleVector& other) const;

  OrderPtr order_;
  std::vector<Term> terms_;
};

// Polynomials are rank-1 vectors.  p * v for a polynomial p and a vector v.
ModuleVector multiply(const ModuleVector& poly, const ModuleVector& v);
// Place a polynomial in a given position of a module with the given order.
ModuleVector embed(const ModuleVector& poly, std::size_t position, const OrderPtr& order);
// sum_l u_l * images[l], in the order of the images.
ModuleVector evaluate(const ModuleVector& u, std::span<const ModuleVector> images);

// DSL text: "X^2*Y - 3", "[X, 0, (y + 1)*Y]".
std::string format_polynomial(const ModuleVector& poly, std::span<const std::string> names);
std::string format_vector(const ModuleVector& v, std::span<const std::string> names);
std::string format_monomial(const Exponents& e, std::span<const std::string> names);

}  // namespace bezout
