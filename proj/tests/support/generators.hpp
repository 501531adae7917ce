#pragma once

// Seeded random generators for property tests.

#include <random>
#include <vector>

#include "bezout/poly.hpp"
#include "bezout/ring.hpp"
#include "support/print.hpp"

namespace bezout::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// Small elements: integers in [-bound, bound], fractions with odd small
// denominators for Z_(p), anything for finite rings.
inline Element random_element(const Ring& ring, Rng& rng, long bound = 6) {
  switch (ring.kind()) {
    case RingKind::Integers:
      return ring.from_integer(uniform(rng, -bound, bound));
    case RingKind::IntegersMod:
      return ring.from_integer(uniform(rng, 0, ring.parameter().get_si() - 1));
    case RingKind::TruncatedF2Y: {
      unsigned long r = ring.nilpotency();
      return Element(TruncatedBits{mpz_class(static_cast<unsigned long>(uniform(rng, 0, (1L << r) - 1)))});
    }
    case RingKind::IntegersLocalized: {
      long p = ring.parameter().get_si();
      long den;
      do den = uniform(rng, 1, 5);
      while (den % p == 0);
      mpq_class q(uniform(rng, -bound, bound), den);
      q.canonicalize();
      return Element(q);
    }
  }
  return ring.zero();
}

inline Element random_nonzero(const Ring& ring, Rng& rng, long bound = 6) {
  for (;;) {
    Element e = random_element(ring, rng, bound);
    if (!ring.is_zero(e)) return e;
  }
}

inline Exponents random_exponents(std::size_t n, Rng& rng, unsigned max_degree) {
  Exponents e(n, 0);
  unsigned total = static_cast<unsigned>(uniform(rng, 0, max_degree));
  for (unsigned k = 0; k < total; ++k) e[uniform(rng, 0, long(n) - 1)] += 1;
  return e;
}

inline ModuleMonomial random_monomial(const Space& sp, Rng& rng, unsigned max_degree) {
  return ModuleMonomial{random_exponents(sp.nvars, rng, max_degree),
                        static_cast<std::size_t>(uniform(rng, 0, long(sp.rank) - 1))};
}

inline ModuleVector random_vector(const OrderPtr& order, Rng& rng, unsigned max_degree, int max_terms,
                                  long bound = 6) {
  std::vector<Term> ts;
  int k = static_cast<int>(uniform(rng, 1, max_terms));
  for (int i = 0; i < k; ++i)
    ts.push_back(Term{random_nonzero(order->ring(), rng, bound), random_monomial(order->space(), rng, max_degree)});
  return ModuleVector::from_terms(order, std::move(ts));
}

inline ModuleVector random_nonzero_vector(const OrderPtr& order, Rng& rng, unsigned max_degree, int max_terms,
                                          long bound = 6) {
  for (;;) {
    ModuleVector v = random_vector(order, rng, max_degree, max_terms, bound);
    if (!v.is_zero()) return v;
  }
}

// The rings named by the property suite.
inline std::vector<Ring> property_rings() {
  return {Ring::integers(), Ring::integers_mod(4), Ring::integers_mod(6), Ring::integers_mod(12),
          Ring::truncated_f2y(2), Ring::localized_at(2)};
}

struct Ambient {
  Ring ring;
  std::size_t nvars, rank;
};

inline std::vector<Ambient> property_ambients() {
  std::vector<Ambient> out;
  for (const Ring& r : property_rings()) {
    out.push_back({r, 2, 1});
    out.push_back({r, 2, 3});
    out.push_back({r, 1, 2});
  }
  return out;
}

}  // namespace bezout::testing
