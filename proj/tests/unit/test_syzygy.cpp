#include <gtest/gtest.h>

#include "bezout/errors.hpp"
#include "bezout/syzygy.hpp"
#include "support/dsl.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace bezout;
using namespace bezout::testing;

namespace {

Dsl zz{Ring::integers(), {"Y", "X"}};
Dsl z2{Ring::localized_at(2), {"Y", "X"}};
Dsl z4{Ring::integers_mod(4), {"Y", "X"}};
Dsl z12{Ring::integers_mod(12), {"Y", "X"}};

std::vector<ModuleVector> ex67() { return zz.list({"Y^2 - X + 3", "4*X^2 - 4", "6*X + 6"}); }
std::vector<ModuleVector> ex59() { return z2.list({"Y^4 - Y", "2*Y", "X^3 - 1"}); }
std::vector<ModuleVector> ex512() { return z4.list({"Y^4 - Y", "2*Y", "X^3 - 1"}); }
std::vector<ModuleVector> ex610() { return z12.list({"Y + 1", "X^3 + X^2 + 6", "3*X^2", "9"}); }

std::vector<std::string> shown(const Dsl& d, const std::vector<ModuleVector>& vs) {
  std::vector<std::string> out;
  for (const ModuleVector& v : vs) out.push_back(d.show(v));
  return out;
}

// "X^3e1 3e1" style rendering of a term list.
std::string terms_string(const Dsl& d, const std::vector<Term>& ts) {
  std::string out;
  for (const Term& t : ts) {
    if (!out.empty()) out += " ";
    std::string m = format_monomial(t.mono.exponents, d.vars);
    std::string c = d.ring.format(t.coeff);
    if (m.empty() || m == "1") out += c;
    else out += (c == "1" ? "" : c + "*") + m;
    out += "e" + std::to_string(t.mono.position + 1);
  }
  return out;
}

std::string lt_form(const Dsl& d, const ResolutionLevel& level) {
  return terms_string(d, lt_normal_form(level.order, leading_terms(level.basis)));
}

std::vector<ModuleVector> in_order(const Dsl& d, std::initializer_list<std::string_view> texts, const OrderPtr& order) {
  std::vector<ModuleVector> out;
  for (auto t : texts) out.push_back(d(t, order->space().rank).reordered(order));
  return out;
}

bool annihilates(const ModuleVector& u, std::span<const ModuleVector> source) {
  return evaluate(u, source).is_zero();
}

}  // namespace

TEST(TermSyzygies, RegularSingleTerm) {
  OrderPtr o = MonomialOrder::top_lex(Space{zz.ring, 2, 1});
  std::vector<Term> ts{zz("7*X").leading_term()};
  EXPECT_TRUE(term_syzygies(o, ts).relations.empty());
}

TEST(TermSyzygies, ModFourEqualTerms) {
  Term t = z4("2*Y").leading_term();
  std::vector<Term> ts{t, t};
  SyzygyBasis s = term_syzygies(z4("Y").order(), ts);
  EXPECT_EQ(shown(z4, s.relations), (std::vector<std::string>{"[2, 0]", "[1, 3]", "[0, 2]"}));
  using P = std::pair<std::size_t, std::size_t>;
  EXPECT_EQ(s.pairs, (std::vector<P>{{0, 0}, {0, 1}, {1, 1}}));
  for (const ModuleVector& u : s.relations) EXPECT_TRUE(annihilates(u, s.source));
}

TEST(TermSyzygies, ModTwelveLeadingTerms) {
  std::vector<Term> ts = leading_terms(ex610());
  SyzygyBasis s = term_syzygies(ex610()[0].order(), ts);
  EXPECT_EQ(terms_string(z12, lt_normal_form(s.order, leading_terms(s.relations))), "X^3e1 3e1 3e2 1e3 4e4");
}

TEST(TermSyzygies, RejectsZeroTerm) {
  OrderPtr o = MonomialOrder::top_lex(Space{zz.ring, 2, 1});
  std::vector<Term> ts{Term{zz.c(0), ModuleMonomial{{1, 0}, 0}}};
  EXPECT_THROW(term_syzygies(o, ts), UsageError);
  EXPECT_THROW(term_syzygies(o, {}), UsageError);
}

TEST(Schreyer, IntegerExample) {
  SyzygyBasis s = schreyer_syzygies(ex67());
  EXPECT_EQ(shown(zz, s.relations), (std::vector<std::string>{"[4*X^2 - 4, -Y^2 + X - 3, 0]",
                                                               "[6*X + 6, 0, -Y^2 + X - 3]", "[0, 3, -2*X + 2]"}));
  EXPECT_TRUE(is_groebner(s.relations));
}

TEST(Schreyer, LocalizedExample) {
  SyzygyBasis s = schreyer_syzygies(ex59());
  EXPECT_EQ(shown(z2, s.relations), (std::vector<std::string>{"[2, -Y^3 + 1, 0]", "[X^3 - 1, 0, -Y^4 + Y]",
                                                               "[0, X^3 - 1, -2*Y]"}));
}

TEST(Schreyer, ModFourExample) {
  SyzygyBasis s = schreyer_syzygies(ex512());
  std::vector<std::string> rel = shown(z4, s.relations);
  EXPECT_NE(std::find(rel.begin(), rel.end(), "[0, 2, 0]"), rel.end());
  EXPECT_NE(std::find(rel.begin(), rel.end(), "[X^3 + 3, 0, 3*Y^4 + Y]"), rel.end());
  std::vector<ModuleVector> printed =
      in_order(z4, {"[X^3 - 1, 0, -Y^4 + Y]", "[2, -Y^3 + 1, 0]", "[0, X^3 - 1, -2*Y]", "[0, 2, 0]"}, s.order);
  EXPECT_TRUE(module_equal(s.relations, printed));
}

TEST(Schreyer, ModTwelveExample) {
  SyzygyBasis s = schreyer_syzygies(ex610());
  std::vector<std::string> rel = shown(z12, s.relations);
  EXPECT_EQ(rel.size(), 8u);
  EXPECT_EQ(rel[0], "[X^3 + X^2 + 6, 11*Y + 11, 0, 0]");
  EXPECT_EQ(rel[2], "[9, 0, 0, 11*Y + 11]");
  for (const ModuleVector& u : s.relations) EXPECT_TRUE(annihilates(u, s.source));
}

TEST(Schreyer, RejectsNonGroebnerInput) {
  EXPECT_THROW(schreyer_syzygies(zz.list({"X + 1", "X"})), UsageError);
}

TEST(Resolution, IntegerExample) {
  Resolution r = free_resolution(ex67());
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.length(), 2u);
  EXPECT_EQ(r.levels[1].labels, (std::vector<std::string>{"1,2'", "1,3", "2,3"}));
  EXPECT_EQ(zz.show(r.levels[1].basis[0]), "[2*X^2 + 6*X + 4, Y^2 - X + 3, -Y^2*X + X^2 - 3*X]");
  EXPECT_EQ(shown(zz, r.levels[2].basis), (std::vector<std::string>{"[3, -X - 2, -Y^2 + X - 3]"}));
  EXPECT_EQ(r.tail.kind, TailKind::Free);
  EXPECT_TRUE(verify_resolution(r).ok());
}

TEST(Resolution, ModTwelvePseudoReducedInput) {
  Resolution r = free_resolution(ex610());
  EXPECT_EQ(r.levels[0].basis.size(), 3u);
  EXPECT_EQ(r.tail.kind, TailKind::Periodic);
  EXPECT_TRUE(verify_resolution(r).ok());
}

TEST(Resolution, LocalizedExample) {
  Resolution r = free_resolution(ex59());
  ASSERT_EQ(r.length(), 2u);
  EXPECT_EQ(lt_form(z2, r.levels[1]), "X^3e1 2e1 X^3e2");
  std::vector<ModuleVector> printed = in_order(z2, {"[2, -X^3 + 1, -Y^3 + 1]"}, r.levels[2].order);
  EXPECT_TRUE(module_equal(r.levels[2].basis, printed));
  EXPECT_EQ(r.tail.kind, TailKind::Free);
  EXPECT_TRUE(verify_resolution(r).ok());
}

TEST(Resolution, ModFourPeriodicTail) {
  Resolution r = free_resolution(ex512());
  EXPECT_EQ(r.tail.kind, TailKind::Periodic);
  std::vector<Element> twos(4, z4.c(2));
  EXPECT_EQ(r.tail.b, twos);
  EXPECT_EQ(r.tail.ann_b, twos);
  EXPECT_EQ(r.tail.ann_ann_b, twos);
  ASSERT_TRUE(r.tail.check_level.has_value());
  EXPECT_EQ(lt_form(z4, *r.tail.check_level), "2e1 2e2 2e3 2e4");
  EXPECT_EQ(lt_form(z4, r.levels.back()), "2e1 2e2 2e3 2e4");
  EXPECT_TRUE(verify_resolution(r).ok());
}

TEST(Resolution, ModTwelvePeriodicTail) {
  ResolutionOptions keep;
  keep.pseudo_reduce_input = false;
  Resolution r = free_resolution(ex610(), keep);
  EXPECT_EQ(lt_form(z12, r.levels[1]), "X^3e1 3e1 3e2 1e3 4e4");
  EXPECT_EQ(r.levels[1].labels, (std::vector<std::string>{"1,2", "1,4'", "2,3", "3,4'", "4,4"}));
  EXPECT_EQ(r.tail.kind, TailKind::Periodic);
  EXPECT_EQ(r.tail.b, (std::vector<Element>{z12.c(3), z12.c(4), z12.c(4), z12.c(3)}));
  EXPECT_EQ(r.tail.ann_b, (std::vector<Element>{z12.c(4), z12.c(3), z12.c(3), z12.c(4)}));
  EXPECT_EQ(r.tail.ann_ann_b, r.tail.b);
  ASSERT_TRUE(r.tail.check_level.has_value());
  EXPECT_EQ(lt_form(z12, *r.tail.check_level), "4e1 3e2 3e3 4e4");
  EXPECT_TRUE(verify_resolution(r).ok());
}

TEST(Resolution, QuotientLength) {
  ResolutionOptions opts;
  opts.quotient = true;
  Resolution r = free_resolution(ex67(), opts);
  EXPECT_TRUE(r.quotient);
  EXPECT_EQ(r.quotient_length(), 3u);
}

TEST(Resolution, LevelLimitCarriesPartial) {
  ResolutionOptions opts;
  opts.max_levels = 1;
  try {
    free_resolution(ex67(), opts);
    FAIL() << "expected ResolutionIncomplete";
  } catch (const ResolutionIncomplete& e) {
    EXPECT_GE(e.partial().levels.size(), 1u);
    EXPECT_EQ(e.partial().levels[0].basis.size(), 3u);
  }
}

TEST(Resolution, TraceReportsLevels) {
  ResolutionOptions opts;
  int levels = 0;
  opts.trace = [&](const TraceEvent& ev) {
    if (ev.kind == "level") ++levels;
  };
  free_resolution(ex59(), opts);
  EXPECT_GE(levels, 3);
}

TEST(Verify, SignFlipBreaksCompositeZero) {
  Resolution r = free_resolution(ex59());
  ModuleVector& v = r.levels[2].basis[0];
  v = v.sub(embed(v.component(1), 1, v.order()).scaled(z2.c(2)));
  VerificationReport rep = verify_resolution(r);
  ASSERT_FALSE(rep.ok());
  bool found = false;
  for (const VerificationEntry& e : rep.failures())
    if (e.check == "composite-zero" && e.level == 2) found = true;
  EXPECT_TRUE(found);
}

TEST(SyzygyProperty, RelationsAnnihilateAndFormGroebnerBasis) {
  Rng rng(505);
  int cases = 0, relations = 0;
  for (const Ambient& a : property_ambients()) {
    SCOPED_TRACE(a.ring.name());
    OrderPtr o = MonomialOrder::top_lex(Space{a.ring, a.nvars, a.rank});
    for (int i = 0; i < 56; ++i) {
      std::vector<ModuleVector> gens;
      int k = uniform(rng, 1, 3);
      for (int j = 0; j < k; ++j) gens.push_back(random_nonzero_vector(o, rng, 3, 3, 4));
      GroebnerBasis gb = buchberger(gens);
      SyzygyBasis s = schreyer_syzygies(gb.elements);
      for (const ModuleVector& u : s.relations) {
        EXPECT_TRUE(annihilates(u, gb.elements)) << show_vector(u);
        ++relations;
      }
      EXPECT_TRUE(is_groebner(s.relations));
      ++cases;
    }
  }
  EXPECT_GE(cases, 1000);
  EXPECT_GE(relations, 1000);
}

TEST(SyzygyProperty, LeadingTermFormulas) {
  Rng rng(606);
  int checked = 0;
  for (const Ambient& a : property_ambients()) {
    SCOPED_TRACE(a.ring.name());
    const Ring& R = a.ring;
    OrderPtr o = MonomialOrder::top_lex(Space{R, a.nvars, a.rank});
    for (int i = 0; i < 15; ++i) {
      std::vector<ModuleVector> gens;
      int k = uniform(rng, 1, 3);
      for (int j = 0; j < k; ++j) gens.push_back(random_nonzero_vector(o, rng, 3, 3, 4));
      std::vector<ModuleVector> g = buchberger(gens).elements;
      SyzygyBasis s = schreyer_syzygies(g);
      for (std::size_t r = 0; r < s.relations.size(); ++r) {
        auto [pi, pj] = s.pairs[r];
        const Term& lt = s.relations[r].leading_term();
        const Element& ci = g[pi].leading_coefficient();
        const Element& cj = g[pj].leading_coefficient();
        ASSERT_EQ(lt.mono.position, pi);
        if (pi == pj) {
          EXPECT_TRUE(is_constant(lt.mono.exponents));
          EXPECT_TRUE(R.associates(lt.coeff, R.ann_gen(ci)));
          ++checked;
          continue;
        }
        EXPECT_EQ(lt.mono.exponents,
                  positive_difference(g[pj].leading_monomial().exponents, g[pi].leading_monomial().exponents));
        // b * LC(g_i) lies in <LC(g_j)> in every case.
        EXPECT_TRUE(R.divides(cj, R.mul(lt.coeff, ci)).has_value());
        if (R.kind() == RingKind::Integers) {
          mpz_class q = cj.integer() / gcd(ci.integer(), cj.integer());
          EXPECT_TRUE(R.associates(lt.coeff, Element(q)));
        } else if (R.is_valuation_ring()) {
          if (R.divides(cj, ci)) EXPECT_TRUE(R.divides(lt.coeff, R.one()).has_value());
          else EXPECT_TRUE(R.associates(R.mul(lt.coeff, ci), cj));
        } else {
          // Z/N: the coefficient divides LC(g_j) / gcd taken on representatives.
          mpz_class q = cj.integer() / gcd(gcd(ci.integer(), cj.integer()), R.parameter());
          EXPECT_TRUE(R.divides(lt.coeff, R.from_integer(q)).has_value());
        }
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 1000);
}

TEST(SyzygyProperty, TermSyzygiesCompleteOverModularRings) {
  // A syzygy of terms splits into homogeneous pieces, one per module
  // monomial of the target, so searching homogeneous candidates suffices.
  Rng rng(707);
  int cases = 0, candidates = 0;
  for (long n : {4L, 6L, 8L, 9L, 12L}) {
    Ring R = Ring::integers_mod(n);
    std::vector<Element> all = R.elements();
    for (int i = 0; i < 12; ++i) {
      std::size_t nvars = uniform(rng, 1, 2), rank = uniform(rng, 1, 2);
      OrderPtr o = MonomialOrder::top_lex(Space{R, nvars, rank});
      std::vector<Term> ts;
      int p = uniform(rng, 1, 3);
      for (int j = 0; j < p; ++j) ts.push_back(Term{random_nonzero(R, rng), random_monomial(o->space(), rng, 2)});
      SyzygyBasis s = term_syzygies(o, ts);
      for (const ModuleVector& u : s.relations) EXPECT_TRUE(annihilates(u, s.source));
      for (std::size_t pos = 0; pos < rank; ++pos) {
        for (unsigned a = 0; a <= 3; ++a) {
          for (unsigned b = 0; b <= (nvars == 2 ? 3u : 0u); ++b) {
            Exponents target = nvars == 2 ? Exponents{a, b} : Exponents{a};
            ModuleMonomial m{target, pos};
            std::vector<std::size_t> idx;
            for (std::size_t l = 0; l < ts.size(); ++l)
              if (mono_divides(ts[l].mono, m)) idx.push_back(l);
            if (idx.empty()) continue;
            std::vector<std::size_t> digits(idx.size(), 0);
            for (;;) {
              std::size_t d = 0;
              while (d < digits.size() && ++digits[d] == all.size()) digits[d++] = 0;
              if (d == digits.size()) break;
              Element sum = R.zero();
              std::vector<Term> parts;
              for (std::size_t q = 0; q < idx.size(); ++q) {
                const Element& c = all[digits[q]];
                sum = R.add(sum, R.mul(c, ts[idx[q]].coeff));
                if (!R.is_zero(c))
                  parts.push_back(Term{c, ModuleMonomial{*exponent_quotient(ts[idx[q]].mono.exponents, target), idx[q]}});
              }
              if (!R.is_zero(sum)) continue;
              ModuleVector v = ModuleVector::from_terms(s.order, parts);
              ASSERT_TRUE(annihilates(v, s.source));
              EXPECT_TRUE(divide(v, s.relations).remainder.is_zero()) << show_vector(v);
              ++candidates;
            }
          }
        }
      }
      ++cases;
    }
  }
  EXPECT_GE(cases, 60);
  EXPECT_GE(candidates, 1000);
}

TEST(ResolutionProperty, DomainResolutionsAreShort) {
  Rng rng(808);
  int cases = 0;
  for (const Ring& R : {Ring::integers(), Ring::localized_at(2)}) {
    SCOPED_TRACE(R.name());
    OrderPtr o = MonomialOrder::top_lex(Space{R, 2, 1});
    for (int i = 0; i < 30; ++i) {
      std::vector<ModuleVector> gens;
      int k = uniform(rng, 1, 3);
      for (int j = 0; j < k; ++j) gens.push_back(random_nonzero_vector(o, rng, 3, 3, 4));
      ResolutionOptions opts;
      opts.quotient = true;
      Resolution r = free_resolution(gens, opts);
      EXPECT_EQ(r.tail.kind, TailKind::Free);
      EXPECT_LE(r.quotient_length(), 3u);
      VerificationReport rep = verify_resolution(r);
      EXPECT_TRUE(rep.ok()) << (rep.ok() ? "" : rep.failures()[0].check + " " + rep.failures()[0].witness);
      ++cases;
    }
  }
  EXPECT_GE(cases, 50);
}
