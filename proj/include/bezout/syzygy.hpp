#pragma once

// Syzygies of term lists, Schreyer's algorithm and iterated free
// resolutions.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bezout/groebner.hpp"

namespace bezout {

struct SyzygyBasis {
  std::vector<ModuleVector> relations;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 0-based (i, j), i <= j
  OrderPtr order;                                         // Schreyer order over source
  std::vector<ModuleVector> source;
};

SyzygyBasis term_syzygies(const OrderPtr& order, std::span<const Term> terms);

// Checks the Buchberger criterion first unless `trusted`; a non-Groebner
// source is a UsageError.
SyzygyBasis schreyer_syzygies(std::span<const ModuleVector> gb, DivisionMethod method = DivisionMethod::Bezout,
                              bool trusted = false);

// Leading-term reduction: elements whose leading term lies in the module of
// the others' leading terms are dropped, and leading coefficients are
// replaced by the gcd of all coefficients available at their monomial.
// Tails are left alone.  Leading coefficients end up canonical.
std::vector<ModuleVector> reduce_leading_terms(std::vector<ModuleVector> elements);

// Canonical description of a term module: per position, the terms c*X^a
// where the coefficient ideal jumps.  Sorted by position, then monomial
// descending under `order`.
std::vector<Term> lt_normal_form(const OrderPtr& order, std::span<const Term> terms);

struct ResolutionLevel {
  std::vector<ModuleVector> basis;
  std::vector<std::string> labels;
  OrderPtr order;  // order the basis lives in
  std::size_t rank = 0;
};

enum class TailKind { Free, Periodic };

struct ResolutionTail {
  TailKind kind = TailKind::Free;
  std::vector<Element> b;
  std::vector<Element> ann_b;
  std::vector<Element> ann_ann_b;
  std::optional<ResolutionLevel> check_level;  // computed past the last level
};

struct Resolution {
  std::vector<ResolutionLevel> levels;  // levels[0] generates U
  ResolutionTail tail;
  std::size_t nvars = 0;
  bool quotient = false;

  // Number of maps between free modules: 0 -> F_p -> ... -> F_0 -> U.
  std::size_t length() const { return levels.size() - 1; }
  // Length of the resolution of H/U, which prepends H itself.
  std::size_t quotient_length() const { return levels.size(); }
};

struct ResolutionOptions {
  std::size_t max_levels = 0;  // 0: nvars + 2
  DivisionMethod method = DivisionMethod::Bezout;
  bool quotient = false;
  bool pseudo_reduce_input = true;  // false keeps the Buchberger output as level 0
  TraceSink trace;
};

class ResolutionIncomplete : public std::runtime_error {
 public:
  ResolutionIncomplete(const std::string& what, Resolution partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const Resolution& partial() const { return partial_; }

 private:
  Resolution partial_;
};

Resolution free_resolution(std::span<const ModuleVector> gens, const ResolutionOptions& options = {});

struct VerificationEntry {
  std::size_t level;
  std::string check;
  bool ok;
  std::string witness;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;
  bool ok() const;
  std::vector<VerificationEntry> failures() const;
};

VerificationReport verify_resolution(const Resolution& res);

}  // namespace bezout
