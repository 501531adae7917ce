#include "bezout/groebner.hpp"

#include <set>

#include "bezout/errors.hpp"

namespace bezout {

namespace {

void check_divisors(const ModuleVector& h, std::span<const ModuleVector> divisors) {
  for (const ModuleVector& d : divisors) {
    if (d.is_zero()) throw UsageError("division by a zero vector");
    if (!same_order(d.order(), h.order())) throw UsageError("divisor lives under a different monomial order");
  }
}

std::vector<ModuleVector> collect(const OrderPtr& poly_order, std::vector<std::vector<Term>>& parts) {
  std::vector<ModuleVector> out;
  out.reserve(parts.size());
  for (auto& p : parts) out.push_back(ModuleVector::from_terms(poly_order, std::move(p)));
  return out;
}

Term lm_term(const Element& c, const ModuleMonomial& m) { return Term{c, m}; }

// With euclidean = false a leading coefficient outside the ideal of the
// divisor coefficients goes to the remainder untouched.
DivisionResult divide_generic(const ModuleVector& h, std::span<const ModuleVector> divisors, bool prefer_single,
                              bool euclidean = true) {
  check_divisors(h, divisors);
  const Ring& ring = h.ring();
  OrderPtr poly_order = h.order()->polynomial_order();
  std::vector<std::vector<Term>> q(divisors.size());
  std::vector<Term> r;
  ModuleVector rest = h;
  while (!rest.is_zero()) {
    const ModuleMonomial lm = rest.leading_monomial();
    const Element lc = rest.leading_coefficient();
    std::vector<std::size_t> dset;
    std::vector<Exponents> shifts;
    std::vector<Element> lcs;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      if (auto g = mono_divides(divisors[j].leading_monomial(), lm)) {
        dset.push_back(j);
        shifts.push_back(std::move(*g));
        lcs.push_back(divisors[j].leading_coefficient());
      }
    }
    if (prefer_single) {
      for (std::size_t k = 0; k < dset.size(); ++k) {
        if (ring.divides(lcs[k], lc)) {
          dset = {dset[k]};
          shifts = {shifts[k]};
          lcs = {lcs[k]};
          break;
        }
      }
    }
    Element d = ring.zero();
    std::vector<Element> c;
    if (dset.size() == 1) {
      d = lcs[0];
      c = {ring.one()};
    } else if (!dset.empty()) {
      BezoutResult b = ring.gcd_bezout(lcs);
      d = b.gcd;
      c = std::move(b.coefficients);
    }
    EuclidStep step = ring.euclid_step(lc, d);
    if (!euclidean && !ring.is_zero(step.remainder)) step = EuclidStep{ring.zero(), lc};
    std::vector<Term> sub;
    for (std::size_t k = 0; k < dset.size(); ++k) {
      Element m = ring.mul(step.quotient, c[k]);
      if (ring.is_zero(m)) continue;
      q[dset[k]].push_back(Term{m, ModuleMonomial{shifts[k], 0}});
      ModuleVector part = divisors[dset[k]].times(RingTerm{m, shifts[k]});
      sub.insert(sub.end(), part.terms().begin(), part.terms().end());
    }
    if (!ring.is_zero(step.remainder)) {
      r.push_back(lm_term(step.remainder, lm));
      sub.push_back(lm_term(step.remainder, lm));
    }
    ModuleVector next = rest.sub(ModuleVector::from_terms(rest.order(), std::move(sub)));
    if (!next.is_zero() && rest.order()->compare(next.leading_monomial(), lm) >= 0)
      throw InvariantViolation("division step did not lower the leading monomial");
    rest = std::move(next);
  }
  return DivisionResult{collect(poly_order, q), ModuleVector::from_terms(h.order(), std::move(r))};
}

}  // namespace

DivisionResult divide(const ModuleVector& h, std::span<const ModuleVector> divisors) {
  return divide_generic(h, divisors, true);
}

DivisionResult divide_aggregate(const ModuleVector& h, std::span<const ModuleVector> divisors) {
  return divide_generic(h, divisors, false);
}

DivisionResult divide_valuation(const ModuleVector& h, std::span<const ModuleVector> divisors) {
  if (!h.ring().is_valuation_ring())
    throw UsageError("first-divisor division needs a valuation ring, not " + h.ring().name());
  check_divisors(h, divisors);
  const Ring& ring = h.ring();
  std::vector<std::vector<Term>> q(divisors.size());
  std::vector<Term> r;
  ModuleVector rest = h;
  while (!rest.is_zero()) {
    const Term lt = rest.leading_term();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size() && !divided; ++i) {
      if (auto t = term_divides(ring, divisors[i].leading_term(), lt)) {
        q[i].push_back(Term{t->coeff, ModuleMonomial{t->exponents, 0}});
        rest = rest.sub(divisors[i].times(*t));
        divided = true;
      }
    }
    if (!divided) {
      r.push_back(lt);
      rest = rest.sub(ModuleVector::from_terms(rest.order(), {lt}));
    }
  }
  return DivisionResult{collect(h.order()->polynomial_order(), q), ModuleVector::from_terms(h.order(), std::move(r))};
}

DivisionResult divide(const ModuleVector& h, std::span<const ModuleVector> divisors, DivisionMethod method) {
  switch (method) {
    case DivisionMethod::Bezout:
      return divide(h, divisors);
    case DivisionMethod::Aggregate:
      return divide_aggregate(h, divisors);
    case DivisionMethod::Valuation:
      return divide_valuation(h, divisors);
  }
  return divide(h, divisors);
}

// ---------------------------------------------------------------- S-polynomials

SPair auto_s_poly(const ModuleVector& f) {
  if (f.is_zero()) throw UsageError("S-polynomial of a zero vector");
  const Ring& ring = f.ring();
  Exponents zero(f.space().nvars, 0);
  Element b = ring.ann_gen(f.leading_coefficient());
  ModuleVector value = ring.is_zero(b) ? ModuleVector(f.order()) : f.scaled(b);
  return SPair{std::move(value), RingTerm{b, zero}, RingTerm{ring.zero(), zero}, SPairKind::Auto};
}

SPair cross_s_poly(const ModuleVector& f, const ModuleVector& g) {
  if (f.is_zero() || g.is_zero()) throw UsageError("S-polynomial of a zero vector");
  if (!same_order(f.order(), g.order())) throw UsageError("S-polynomial of vectors under different orders");
  const Ring& ring = f.ring();
  Exponents zero(f.space().nvars, 0);
  if (f.leading_position() != g.leading_position())
    return SPair{ModuleVector(f.order()), RingTerm{ring.zero(), zero}, RingTerm{ring.zero(), zero}, SPairKind::Zero};
  const Element& lf = f.leading_coefficient();
  const Element& lg = g.leading_coefficient();
  // a * gcd = LC(f), b * gcd = LC(g), gcd(a, b) = 1.
  Element a, b;
  if (ring.is_valuation_ring()) {
    if (auto q = ring.divides(lg, lf)) {
      a = *q;
      b = ring.one();
    } else {
      a = ring.one();
      b = *ring.divides(lf, lg);
    }
  } else {
    StrictPair sp = ring.strict_pair(lf, lg);
    a = sp.cofactor1;
    b = sp.cofactor2;
  }
  const Exponents& mu = f.leading_monomial().exponents;
  const Exponents& nu = g.leading_monomial().exponents;
  RingTerm left{b, positive_difference(nu, mu)};
  RingTerm right{a, positive_difference(mu, nu)};
  ModuleVector value = f.times(left).sub(g.times(right));
  return SPair{std::move(value), std::move(left), std::move(right), SPairKind::Cross};
}

SPair s_poly(const ModuleVector& f, const ModuleVector& g) {
  if (f == g) return auto_s_poly(f);
  return cross_s_poly(f, g);
}

SPair s_poly_at(std::span<const ModuleVector> gens, std::size_t i, std::size_t j) {
  if (i == j) return auto_s_poly(gens[i]);
  return cross_s_poly(gens[i], gens[j]);
}

// ---------------------------------------------------------------- Buchberger

namespace {

void check_generators(std::span<const ModuleVector> gens) {
  if (gens.empty()) throw UsageError("no generators given");
  for (const ModuleVector& g : gens) {
    if (g.is_zero()) throw UsageError("zero generator");
    if (!same_order(g.order(), gens.front().order())) throw UsageError("generators live under different orders");
  }
}

std::string kind_name(SPairKind k) {
  switch (k) {
    case SPairKind::Auto:
      return "auto";
    case SPairKind::Cross:
      return "cross";
    case SPairKind::Zero:
      return "zero";
  }
  return "?";
}

}  // namespace

GroebnerBasis buchberger(std::span<const ModuleVector> gens, const BuchbergerOptions& options) {
  check_generators(gens);
  std::vector<ModuleVector> g(gens.begin(), gens.end());
  std::set<std::pair<std::size_t, std::size_t>> done;
  std::size_t t = g.size(), u;
  do {
    u = t;
    for (std::size_t i = 0; i < u; ++i) {
      for (std::size_t j = i; j < u; ++j) {
        if (!done.insert({i, j}).second) continue;
        SPair s = s_poly_at(g, i, j);
        ModuleVector rem = s.value.is_zero() ? s.value : divide(s.value, g, options.method).remainder;
        if (options.trace)
          options.trace(TraceEvent{"pair", i, j, kind_name(s.kind) + (rem.is_zero() ? " -> 0" : " -> new element")});
        if (rem.is_zero()) continue;
        if (g.size() >= options.max_elements)
          throw GuardExhausted("Buchberger guard exhausted after " + std::to_string(g.size()) + " elements", g);
        g.push_back(std::move(rem));
        ++t;
        if (options.trace) options.trace(TraceEvent{"add", t - 1, 0, ""});
      }
    }
  } while (t != u);
  return GroebnerBasis{std::move(g), gens.front().order(), false};
}

GroebnerBasis pseudo_reduce(const GroebnerBasis& gb, const BuchbergerOptions& options) {
  std::vector<ModuleVector> g = gb.elements;
  const std::size_t max_rounds = 1000;
  for (std::size_t round = 0;; ++round) {
    if (round == max_rounds) throw InvariantViolation("pseudo-reduction did not stabilise");
    bool changed = false;
    for (std::size_t j = 0; j < g.size();) {
      std::vector<ModuleVector> others;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (k != j) others.push_back(g[k]);
      ModuleVector r = options.method == DivisionMethod::Valuation
                           ? divide_valuation(g[j], others).remainder
                           : divide_generic(g[j], others, options.method == DivisionMethod::Bezout, false).remainder;
      if (r.is_zero()) {
        if (options.trace) options.trace(TraceEvent{"drop", j, 0, ""});
        g.erase(g.begin() + j);
        changed = true;
        continue;
      }
      if (!(r == g[j])) {
        if (options.trace) options.trace(TraceEvent{"replace", j, 0, ""});
        g[j] = std::move(r);
        changed = true;
      }
      ++j;
    }
    if (!changed) break;
  }
  return GroebnerBasis{std::move(g), gb.order, true};
}

std::optional<std::pair<std::size_t, std::size_t>> groebner_witness(std::span<const ModuleVector> gens,
                                                                   DivisionMethod method) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) {
      SPair s = s_poly_at(gens, i, j);
      if (s.value.is_zero()) continue;
      if (!divide(s.value, gens, method).remainder.is_zero()) return std::make_pair(i, j);
    }
  return std::nullopt;
}

bool is_groebner(std::span<const ModuleVector> gens, DivisionMethod method) {
  return !groebner_witness(gens, method).has_value();
}

// ---------------------------------------------------------------- membership

std::optional<TermCertificate> term_module_member(const Ring& ring, const Term& t, std::span<const Term> gens) {
  TermCertificate cert;
  std::vector<Element> lcs;
  std::vector<Exponents> shifts;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (auto gamma = mono_divides(gens[k].mono, t.mono)) {
      cert.indices.push_back(k);
      shifts.push_back(std::move(*gamma));
      lcs.push_back(gens[k].coeff);
    }
  }
  if (cert.indices.empty()) {
    if (ring.is_zero(t.coeff)) return cert;
    return std::nullopt;
  }
  BezoutResult b = ring.gcd_bezout(lcs);
  auto factor = ring.divides(b.gcd, t.coeff);
  if (!factor) return std::nullopt;
  for (std::size_t k = 0; k < cert.indices.size(); ++k)
    cert.multipliers.push_back(RingTerm{ring.mul(*factor, b.coefficients[k]), shifts[k]});
  return cert;
}

std::optional<std::vector<ModuleVector>> module_member(const ModuleVector& h, const GroebnerBasis& gb,
                                                       DivisionMethod method) {
  DivisionResult d = divide(h, gb.elements, method);
  if (!d.remainder.is_zero()) return std::nullopt;
  return std::move(d.quotients);
}

std::vector<Term> leading_terms(std::span<const ModuleVector> gens) {
  std::vector<Term> out;
  for (const ModuleVector& g : gens) out.push_back(g.leading_term());
  return out;
}

}  // namespace bezout
