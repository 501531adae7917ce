#pragma once

// Division with remainder, S-polynomials, Buchberger's algorithm,
// pseudo-reduction and membership tests.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bezout/poly.hpp"

namespace bezout {

struct TraceEvent {
  std::string kind;  // "pair", "add", "replace", "drop"
  std::size_t i = 0;
  std::size_t j = 0;
  std::string detail;
};
using TraceSink = std::function<void(const TraceEvent&)>;

struct DivisionResult {
  std::vector<ModuleVector> quotients;  // polynomials, one per divisor
  ModuleVector remainder;
};

// Bezout: the first divisor whose leading term divides LT(h') is used alone;
// when there is none, the leading coefficients of all divisors with dividing
// leading monomial are combined through a Bezout identity.
// Aggregate: always combine the whole set.
enum class DivisionMethod { Bezout, Aggregate, Valuation };

DivisionResult divide(const ModuleVector& h, std::span<const ModuleVector> divisors);
DivisionResult divide_aggregate(const ModuleVector& h, std::span<const ModuleVector> divisors);
// First divisor whose leading term divides; valuation rings only.
DivisionResult divide_valuation(const ModuleVector& h, std::span<const ModuleVector> divisors);
DivisionResult divide(const ModuleVector& h, std::span<const ModuleVector> divisors, DivisionMethod method);

enum class SPairKind { Auto, Cross, Zero };

// value = left * f - right * g
struct SPair {
  ModuleVector value;
  RingTerm left;
  RingTerm right;
  SPairKind kind;
};

SPair auto_s_poly(const ModuleVector& f);
SPair cross_s_poly(const ModuleVector& f, const ModuleVector& g);
// Auto when f and g are equal, cross otherwise.
SPair s_poly(const ModuleVector& f, const ModuleVector& g);
// Auto when i == j, cross otherwise, even for equal elements.
SPair s_poly_at(std::span<const ModuleVector> gens, std::size_t i, std::size_t j);

struct GroebnerBasis {
  std::vector<ModuleVector> elements;
  OrderPtr order;
  bool pseudo_reduced = false;
};

struct BuchbergerOptions {
  std::size_t max_elements = 10000;
  DivisionMethod method = DivisionMethod::Bezout;
  TraceSink trace;
};

class GuardExhausted : public std::runtime_error {
 public:
  GuardExhausted(const std::string& what, std::vector<ModuleVector> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<ModuleVector>& partial() const { return partial_; }

 private:
  std::vector<ModuleVector> partial_;
};

GroebnerBasis buchberger(std::span<const ModuleVector> gens, const BuchbergerOptions& options = {});
GroebnerBasis pseudo_reduce(const GroebnerBasis& gb, const BuchbergerOptions& options = {});

// First pair (i, j), i <= j, whose S-polynomial has a nonzero remainder.
std::optional<std::pair<std::size_t, std::size_t>> groebner_witness(std::span<const ModuleVector> gens,
                                                                   DivisionMethod method = DivisionMethod::Bezout);
bool is_groebner(std::span<const ModuleVector> gens, DivisionMethod method = DivisionMethod::Bezout);

// T = sum multipliers[k] * gens[indices[k]]
struct TermCertificate {
  std::vector<std::size_t> indices;
  std::vector<RingTerm> multipliers;
};

std::optional<TermCertificate> term_module_member(const Ring& ring, const Term& t, std::span<const Term> gens);
std::optional<std::vector<ModuleVector>> module_member(const ModuleVector& h, const GroebnerBasis& gb,
                                                       DivisionMethod method = DivisionMethod::Bezout);

std::vector<Term> leading_terms(std::span<const ModuleVector> gens);

}  // namespace bezout
