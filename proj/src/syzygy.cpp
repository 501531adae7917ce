#include "bezout/syzygy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bezout/errors.hpp"

namespace bezout {

namespace {

ModuleVector term_vector(const OrderPtr& order, const RingTerm& t, std::size_t position) {
  return ModuleVector::from_terms(order, {Term{t.coeff, ModuleMonomial{t.exponents, position}}});
}

struct Labelled {
  ModuleVector v;
  std::string label;
};

std::string strip_primes(std::string s) {
  while (!s.empty() && s.back() == '\'') s.pop_back();
  return s;
}

std::string pair_label(const std::string& a, const std::string& b) {
  std::string x = strip_primes(a), y = strip_primes(b);
  auto has = [&](char c) { return x.find(c) != std::string::npos || y.find(c) != std::string::npos; };
  if (!has(',')) return x + "," + y;
  if (!has(';')) return x + ";" + y;
  return "(" + x + "),(" + y + ")";
}

// Cancel the leading term of v against the others as long as it lies in
// their leading-term module.
ModuleVector top_reduce(ModuleVector v, std::span<const ModuleVector> others) {
  std::vector<Term> lts = leading_terms(others);
  const Ring& ring = v.ring();
  while (!v.is_zero()) {
    auto cert = term_module_member(ring, v.leading_term(), lts);
    if (!cert) break;
    ModuleVector sub(v.order());
    for (std::size_t k = 0; k < cert->indices.size(); ++k)
      sub = sub.add(others[cert->indices[k]].times(cert->multipliers[k]));
    ModuleVector next = v.sub(sub);
    if (!next.is_zero() && v.order()->compare(next.leading_monomial(), v.leading_monomial()) >= 0)
      throw InvariantViolation("top reduction did not lower the leading monomial");
    v = std::move(next);
  }
  return v;
}

std::vector<Labelled> reduce_labelled(std::vector<Labelled> g) {
  const std::size_t guard = 100000;
  std::size_t steps = 0;
  for (bool changed = true; changed;) {
    changed = false;
    // Later elements go first, so of two associate leading terms the
    // earlier element survives.
    for (std::size_t jj = g.size(); jj-- > 0;) {
      const std::size_t j = jj;
      if (++steps > guard) throw InvariantViolation("leading-term reduction did not stabilise");
      std::vector<ModuleVector> others;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (k != j) others.push_back(g[k].v);
      ModuleVector r = top_reduce(g[j].v, others);
      if (r.is_zero()) {
        g.erase(g.begin() + j);
        changed = true;
        continue;
      }
      if (!(r == g[j].v)) {
        g[j] = Labelled{std::move(r), g[j].label + "'"};
        changed = true;
      }
      // Strengthen the leading coefficient to the gcd over all elements
      // whose leading monomial divides this one.
      const Ring& ring = g[j].v.ring();
      const ModuleMonomial lm = g[j].v.leading_monomial();
      std::vector<Element> lcs{g[j].v.leading_coefficient()};
      std::vector<std::pair<std::size_t, Exponents>> parts;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (k == j) continue;
        if (auto shift = mono_divides(g[k].v.leading_monomial(), lm)) {
          lcs.push_back(g[k].v.leading_coefficient());
          parts.emplace_back(k, std::move(*shift));
        }
      }
      if (!parts.empty()) {
        BezoutResult bz = ring.gcd_bezout(lcs);
        if (!ring.associates(bz.gcd, lcs[0])) {
          ModuleVector acc = g[j].v.scaled(bz.coefficients[0]);
          for (std::size_t k = 0; k < parts.size(); ++k)
            acc = acc.add(g[parts[k].first].v.times(RingTerm{bz.coefficients[k + 1], parts[k].second}));
          if (acc.is_zero() || !(acc.leading_monomial() == lm) ||
              !ring.associates(acc.leading_coefficient(), bz.gcd))
            throw InvariantViolation("Bezout combination lost the leading monomial");
          g[j] = Labelled{std::move(acc), g[j].label + "'"};
          changed = true;
        }
      }
    }
  }
  for (Labelled& l : g) {
    const Ring& ring = l.v.ring();
    UnitNormal n = ring.normalize_unit(l.v.leading_coefficient());
    if (!(n.unit == ring.one())) {
      l.v = l.v.scaled(ring.inverse(n.unit));
      if (l.label.empty() || l.label.back() != '\'') l.label += "'";
    }
  }
  return g;
}

void sort_descending(std::vector<Labelled>& g) {
  std::stable_sort(g.begin(), g.end(), [](const Labelled& a, const Labelled& b) {
    return a.v.order()->compare(a.v.leading_monomial(), b.v.leading_monomial()) > 0;
  });
}

ResolutionLevel make_level(std::vector<Labelled> g, const OrderPtr& order, std::size_t rank) {
  ResolutionLevel level;
  level.order = order;
  level.rank = rank;
  for (Labelled& l : g) {
    level.basis.push_back(std::move(l.v));
    level.labels.push_back(std::move(l.label));
  }
  return level;
}

bool stabilised(const std::vector<ModuleVector>& basis) {
  std::set<std::size_t> positions;
  for (const ModuleVector& v : basis) {
    if (!is_constant(v.leading_monomial().exponents)) return false;
    if (!positions.insert(v.leading_position()).second) return false;
  }
  return true;
}

// The next level: Schreyer relations of `cur`, reduced and sorted.
ResolutionLevel next_level(const ResolutionLevel& cur, DivisionMethod method) {
  SyzygyBasis syz;
  try {
    syz = schreyer_syzygies(cur.basis, method, true);
  } catch (const UsageError& e) {
    throw InvariantViolation(std::string("resolution level is not a Groebner basis: ") + e.what());
  }
  std::vector<Labelled> g;
  for (std::size_t k = 0; k < syz.relations.size(); ++k) {
    auto [i, j] = syz.pairs[k];
    g.push_back(Labelled{syz.relations[k], pair_label(cur.labels[i], cur.labels[j])});
  }
  g = reduce_labelled(std::move(g));
  sort_descending(g);
  return make_level(std::move(g), syz.order, cur.basis.size());
}

std::string show(const ModuleVector& v) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < v.space().nvars; ++i) names.push_back("x" + std::to_string(i + 1));
  return format_vector(v, names);
}

}  // namespace

SyzygyBasis term_syzygies(const OrderPtr& order, std::span<const Term> terms) {
  if (terms.empty()) throw UsageError("term_syzygies needs at least one term");
  std::vector<ModuleVector> vs;
  for (const Term& t : terms) {
    if (order->ring().is_zero(t.coeff)) throw UsageError("term_syzygies of a zero term");
    vs.push_back(ModuleVector::from_terms(order, {t}));
  }
  SyzygyBasis out;
  out.order = MonomialOrder::schreyer(vs);
  out.source = vs;
  const Ring& ring = order->ring();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i; j < vs.size(); ++j) {
      SPair s = s_poly_at(vs, i, j);
      if (s.kind == SPairKind::Zero) continue;
      ModuleVector u = term_vector(out.order, s.left, i);
      if (s.kind == SPairKind::Cross) u = u.sub(term_vector(out.order, s.right, j));
      if (u.is_zero() || ring.is_zero(s.left.coeff)) continue;
      out.relations.push_back(std::move(u));
      out.pairs.emplace_back(i, j);
    }
  }
  return out;
}

SyzygyBasis schreyer_syzygies(std::span<const ModuleVector> gb, DivisionMethod method, bool trusted) {
  if (gb.empty()) throw UsageError("schreyer_syzygies needs at least one element");
  for (const ModuleVector& g : gb)
    if (g.is_zero()) throw UsageError("schreyer_syzygies of a zero element");
  if (!trusted) {
    if (auto w = groebner_witness(gb, method))
      throw UsageError("input is not a Groebner basis: pair (" + std::to_string(w->first + 1) + ", " +
                       std::to_string(w->second + 1) + ") does not reduce to zero");
  }
  SyzygyBasis out;
  out.source.assign(gb.begin(), gb.end());
  out.order = MonomialOrder::schreyer(out.source);
  const Ring& ring = gb.front().ring();
  for (std::size_t i = 0; i < gb.size(); ++i) {
    for (std::size_t j = i; j < gb.size(); ++j) {
      SPair s = s_poly_at(gb, i, j);
      if (s.kind == SPairKind::Zero) continue;
      if (s.kind == SPairKind::Auto && ring.is_zero(s.left.coeff)) continue;
      ModuleVector u = term_vector(out.order, s.left, i);
      if (s.kind == SPairKind::Cross) u = u.sub(term_vector(out.order, s.right, j));
      if (!s.value.is_zero()) {
        DivisionResult d = divide(s.value, gb, method);
        if (!d.remainder.is_zero())
          throw UsageError("input is not a Groebner basis: S(" + std::to_string(i + 1) + ", " +
                           std::to_string(j + 1) + ") has a nonzero remainder");
        for (std::size_t l = 0; l < gb.size(); ++l)
          if (!d.quotients[l].is_zero()) u = u.sub(embed(d.quotients[l], l, out.order));
      }
      if (u.is_zero()) continue;
      out.relations.push_back(std::move(u));
      out.pairs.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<ModuleVector> reduce_leading_terms(std::vector<ModuleVector> elements) {
  std::vector<Labelled> g;
  for (ModuleVector& v : elements) {
    if (v.is_zero()) continue;
    g.push_back(Labelled{std::move(v), ""});
  }
  g = reduce_labelled(std::move(g));
  std::vector<ModuleVector> out;
  for (Labelled& l : g) out.push_back(std::move(l.v));
  return out;
}

std::vector<Term> lt_normal_form(const OrderPtr& order, std::span<const Term> terms) {
  const Ring& ring = order->ring();
  std::map<std::size_t, std::vector<const Term*>> by_position;
  for (const Term& t : terms)
    if (!ring.is_zero(t.coeff)) by_position[t.mono.position].push_back(&t);
  std::vector<Term> out;
  for (auto& [pos, ts] : by_position) {
    std::set<Exponents> candidates;
    for (const Term* t : ts) {
      std::vector<Exponents> add{t->mono.exponents};
      for (const Exponents& c : candidates) add.push_back(lcm_exponents(c, t->mono.exponents));
      candidates.insert(add.begin(), add.end());
    }
    auto ideal_at = [&](const Exponents& m) {
      std::vector<Element> lcs;
      for (const Term* t : ts)
        if (exponent_quotient(t->mono.exponents, m)) lcs.push_back(t->coeff);
      return lcs.empty() ? ring.zero() : ring.gcd_bezout(lcs).gcd;
    };
    for (const Exponents& m : candidates) {
      Element here = ideal_at(m);
      std::vector<Element> below;
      for (const Exponents& d : candidates)
        if (d != m && exponent_quotient(d, m)) below.push_back(ideal_at(d));
      Element lower = below.empty() ? ring.zero() : ring.gcd_bezout(below).gcd;
      if (!ring.associates(here, lower)) out.push_back(Term{ring.canonical(here), ModuleMonomial{m, pos}});
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
    if (a.mono.position != b.mono.position) return a.mono.position < b.mono.position;
    return order->compare(a.mono, b.mono) > 0;
  });
  return out;
}

Resolution free_resolution(std::span<const ModuleVector> gens, const ResolutionOptions& options) {
  if (gens.empty()) throw UsageError("free_resolution needs at least one generator");
  Resolution res;
  res.nvars = gens.front().space().nvars;
  res.quotient = options.quotient;
  const std::size_t max_levels = options.max_levels ? options.max_levels : res.nvars + 2;

  BuchbergerOptions bo;
  bo.method = options.method;
  bo.trace = options.trace;
  GroebnerBasis gb = buchberger(gens, bo);
  if (options.pseudo_reduce_input) gb = pseudo_reduce(gb, bo);
  std::vector<Labelled> g0;
  for (const ModuleVector& v : gb.elements) g0.push_back(Labelled{v, ""});
  sort_descending(g0);
  for (std::size_t i = 0; i < g0.size(); ++i) g0[i].label = std::to_string(i + 1);
  res.levels.push_back(make_level(std::move(g0), gb.order, gb.order->space().rank));

  for (;;) {
    const ResolutionLevel& cur = res.levels.back();
    if (options.trace)
      options.trace(TraceEvent{"level", res.levels.size() - 1, cur.basis.size(), ""});
    if (stabilised(cur.basis)) {
      const Ring& ring = cur.order->ring();
      ResolutionTail& tail = res.tail;
      bool regular = true;
      for (const ModuleVector& v : cur.basis) {
        const Element& b = v.leading_coefficient();
        tail.b.push_back(b);
        tail.ann_b.push_back(ring.ann_gen(b));
        tail.ann_ann_b.push_back(ring.ann_gen(tail.ann_b.back()));
        regular = regular && ring.is_zero(tail.ann_b.back());
      }
      tail.kind = regular ? TailKind::Free : TailKind::Periodic;
      tail.check_level = next_level(cur, options.method);
      break;
    }
    if (res.levels.size() > max_levels) {
      throw ResolutionIncomplete("leading monomials still not constant after " + std::to_string(max_levels) +
                                     " syzygy levels",
                                 res);
    }
    ResolutionLevel next = next_level(cur, options.method);
    if (next.basis.empty()) {
      res.tail.kind = TailKind::Free;
      res.tail.check_level = std::move(next);
      break;
    }
    res.levels.push_back(std::move(next));
  }

  if (options.quotient && res.tail.kind == TailKind::Free && res.levels.front().order->ring().is_domain() &&
      res.quotient_length() > res.nvars + 1)
    throw InvariantViolation("quotient resolution longer than n + 1");
  return res;
}

bool VerificationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const VerificationEntry& e) { return e.ok; });
}

std::vector<VerificationEntry> VerificationReport::failures() const {
  std::vector<VerificationEntry> out;
  for (const VerificationEntry& e : entries)
    if (!e.ok) out.push_back(e);
  return out;
}

VerificationReport verify_resolution(const Resolution& res) {
  VerificationReport report;
  auto add = [&](std::size_t level, std::string check, bool ok, std::string witness = "") {
    report.entries.push_back(VerificationEntry{level, std::move(check), ok, std::move(witness)});
  };
  std::vector<const ResolutionLevel*> levels;
  for (const ResolutionLevel& l : res.levels) levels.push_back(&l);
  if (res.tail.check_level) levels.push_back(&*res.tail.check_level);

  for (std::size_t k = 0; k < levels.size(); ++k) {
    const ResolutionLevel& cur = *levels[k];
    if (!cur.basis.empty()) {
      auto w = groebner_witness(cur.basis);
      add(k, "groebner", !w, w ? "pair " + std::to_string(w->first + 1) + "," + std::to_string(w->second + 1) : "");
    }
    if (k == 0) continue;
    const ResolutionLevel& prev = *levels[k - 1];
    // Composite is zero.
    bool composite = true;
    std::string witness;
    for (std::size_t r = 0; r < cur.basis.size() && composite; ++r) {
      ModuleVector image = evaluate(cur.basis[r], prev.basis);
      if (!image.is_zero()) {
        composite = false;
        witness = cur.labels[r] + " maps to " + show(image);
      }
    }
    add(k, "composite-zero", composite, witness);
    // The relations generate the kernel: leading terms of the term syzygies
    // and independently computed relations must be covered.
    std::vector<Term> lts = leading_terms(cur.basis);
    const Ring& ring = prev.order->ring();
    SyzygyBasis ts = term_syzygies(prev.order, leading_terms(prev.basis));
    bool covered = true;
    witness.clear();
    for (const ModuleVector& s : ts.relations) {
      Term t = s.leading_term();
      if (!term_module_member(ring, t, lts)) {
        covered = false;
        witness = "term relation " + show(s);
        break;
      }
    }
    add(k, "kernel-leading-terms", covered, witness);
    bool generated = true;
    witness.clear();
    SyzygyBasis other = schreyer_syzygies(prev.basis, DivisionMethod::Aggregate, true);
    for (const ModuleVector& u : other.relations) {
      ModuleVector v = u.reordered(cur.order);
      if (!divide(v, cur.basis).remainder.is_zero()) {
        generated = false;
        witness = "relation " + show(u);
        break;
      }
    }
    add(k, "kernel-generated", generated, witness);
  }

  const std::size_t last = levels.size() - 1;
  if (res.tail.kind == TailKind::Free) {
    bool empty = res.tail.check_level && res.tail.check_level->basis.empty();
    add(last, "final-kernel-zero", empty,
        empty ? "" : std::to_string(res.tail.check_level ? res.tail.check_level->basis.size() : 0) + " relations");
  } else if (res.tail.check_level) {
    const ResolutionLevel& extra = *res.tail.check_level;
    const Ring& ring = extra.order->ring();
    std::vector<Term> expected;
    Exponents zero(res.nvars, 0);
    for (std::size_t j = 0; j < res.tail.ann_b.size(); ++j)
      if (!ring.is_zero(res.tail.ann_b[j]))
        expected.push_back(Term{ring.canonical(res.tail.ann_b[j]), ModuleMonomial{zero, j}});
    std::vector<Term> got = lt_normal_form(extra.order, leading_terms(extra.basis));
    bool same = got.size() == expected.size();
    for (std::size_t k = 0; same && k < got.size(); ++k)
      same = got[k].mono == expected[k].mono && got[k].coeff == expected[k].coeff;
    add(last, "periodic-annihilators", same, same ? "" : std::to_string(got.size()) + " leading terms");
    bool cycle = true;
    for (std::size_t j = 0; j < res.tail.b.size(); ++j)
      cycle = cycle && ring.associates(ring.ann_gen(res.tail.ann_ann_b[j]), res.tail.ann_b[j]);
    add(last, "annihilator-cycle", cycle);
  }
  return report;
}

}  // namespace bezout
