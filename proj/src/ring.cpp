#include "bezout/ring.hpp"

#include <algorithm>

#include "bezout/errors.hpp"

namespace bezout {

namespace {

struct ExtGcd {
  mpz_class g, s, t;
};

// g = s*a + t*b with g >= 0.  When a is nonzero and divides b the trivial
// combination (sign(a), 0) is used.
ExtGcd ext_gcd(const mpz_class& a, const mpz_class& b) {
  ExtGcd r;
  if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
    r.g = abs(a);
    r.s = sgn(a);
    r.t = 0;
    return r;
  }
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

mpz_class shift_left(const mpz_class& a, unsigned long k) {
  mpz_class r;
  mpz_mul_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

mpz_class shift_right(const mpz_class& a, unsigned long k) {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

mpz_class truncate_bits(const mpz_class& a, unsigned long k) {
  mpz_class r;
  mpz_fdiv_r_2exp(r.get_mpz_t(), a.get_mpz_t(), k);
  return r;
}

mpz_class xor_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_xor(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Carry-less product truncated to r bits.
mpz_class clmul(const mpz_class& a, const mpz_class& b, unsigned long r) {
  mpz_class acc = 0;
  if (a == 0 || b == 0) return acc;
  mp_bitcnt_t i = mpz_scan1(a.get_mpz_t(), 0);
  while (i != ~static_cast<mp_bitcnt_t>(0) && i < r) {
    acc = xor_z(acc, shift_left(b, i));
    i = mpz_scan1(a.get_mpz_t(), i + 1);
  }
  return truncate_bits(acc, r);
}

unsigned long bit_valuation(const mpz_class& a, unsigned long r) {
  if (a == 0) return r;
  return mpz_scan1(a.get_mpz_t(), 0);
}

unsigned long p_valuation(const mpz_class& a, const mpz_class& p) {
  if (a == 0) return ~0UL;
  mpz_class q = a;
  unsigned long v = mpz_remove(q.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  return v;
}

mpz_class power(const mpz_class& p, unsigned long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), k);
  return r;
}

bool is_prime(const mpz_class& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

}  // namespace

Ring Ring::integers() { return Ring(RingKind::Integers, 0); }

Ring Ring::integers_mod(const mpz_class& modulus) {
  if (modulus < 2) throw UsageError("modulus must be at least 2");
  return Ring(RingKind::IntegersMod, modulus);
}

Ring Ring::truncated_f2y(unsigned nilpotency) {
  if (nilpotency < 2) throw UsageError("nilpotency index must be at least 2");
  if (nilpotency > 4096) throw UsageError("nilpotency index too large");
  return Ring(RingKind::TruncatedF2Y, nilpotency);
}

Ring Ring::localized_at(const mpz_class& prime) {
  if (!is_prime(prime)) throw UsageError("localization requires a prime, got " + prime.get_str());
  return Ring(RingKind::IntegersLocalized, prime);
}

unsigned Ring::nilpotency() const {
  if (kind_ != RingKind::TruncatedF2Y) throw UsageError("ring " + name() + " has no nilpotency index");
  return static_cast<unsigned>(parameter_.get_ui());
}

bool Ring::is_domain() const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersLocalized:
      return true;
    case RingKind::IntegersMod:
    case RingKind::TruncatedF2Y:
      return false;
  }
  return false;
}

bool Ring::is_valuation_ring() const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return false;
    case RingKind::TruncatedF2Y:
    case RingKind::IntegersLocalized:
      return true;
  }
  return false;
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::Integers:
      return "Z";
    case RingKind::IntegersMod:
      return "Z/" + parameter_.get_str();
    case RingKind::TruncatedF2Y:
      return "F2[y]/y^" + parameter_.get_str();
    case RingKind::IntegersLocalized:
      return "Z_(" + parameter_.get_str() + ")";
  }
  return "?";
}

void Ring::check(const Element& x) const {
  bool ok = false;
  switch (kind_) {
    case RingKind::Integers:
      ok = x.holds_integer();
      break;
    case RingKind::IntegersMod:
      ok = x.holds_integer() && x.integer() >= 0 && x.integer() < parameter_;
      break;
    case RingKind::TruncatedF2Y:
      ok = x.holds_bits() && x.bits() >= 0 && mpz_sizeinbase(x.bits().get_mpz_t(), 2) <= parameter_.get_ui();
      break;
    case RingKind::IntegersLocalized:
      if (x.holds_fraction()) {
        mpq_class c = x.fraction();
        c.canonicalize();
        ok = c == x.fraction() && x.fraction().get_den() == c.get_den() &&
             !mpz_divisible_p(x.fraction().get_den_mpz_t(), parameter_.get_mpz_t());
      }
      break;
  }
  if (!ok) throw UsageError("element does not belong to " + name());
}

Element Ring::zero() const { return from_integer(0); }
Element Ring::one() const { return from_integer(1); }

Element Ring::from_integer(const mpz_class& v) const {
  switch (kind_) {
    case RingKind::Integers:
      return Element(v);
    case RingKind::IntegersMod:
      return Element(mod_pos(v, parameter_));
    case RingKind::TruncatedF2Y:
      return Element(TruncatedBits{mpz_odd_p(v.get_mpz_t()) ? mpz_class(1) : mpz_class(0)});
    case RingKind::IntegersLocalized:
      return Element(mpq_class(v));
  }
  return Element();
}

Element Ring::nilpotent() const {
  if (kind_ != RingKind::TruncatedF2Y) throw UsageError("ring " + name() + " has no nilpotent generator y");
  return Element(TruncatedBits{2});
}

bool Ring::is_zero(const Element& a) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return a.integer() == 0;
    case RingKind::TruncatedF2Y:
      return a.bits() == 0;
    case RingKind::IntegersLocalized:
      return a.fraction() == 0;
  }
  return false;
}

Element Ring::add(const Element& a, const Element& b) const {
  switch (kind_) {
    case RingKind::Integers:
      return Element(mpz_class(a.integer() + b.integer()));
    case RingKind::IntegersMod:
      return Element(mod_pos(a.integer() + b.integer(), parameter_));
    case RingKind::TruncatedF2Y:
      return Element(TruncatedBits{xor_z(a.bits(), b.bits())});
    case RingKind::IntegersLocalized:
      return Element(mpq_class(a.fraction() + b.fraction()));
  }
  return Element();
}

Element Ring::neg(const Element& a) const {
  switch (kind_) {
    case RingKind::Integers:
      return Element(mpz_class(-a.integer()));
    case RingKind::IntegersMod:
      return Element(mod_pos(-a.integer(), parameter_));
    case RingKind::TruncatedF2Y:
      return a;
    case RingKind::IntegersLocalized:
      return Element(mpq_class(-a.fraction()));
  }
  return Element();
}

Element Ring::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element Ring::mul(const Element& a, const Element& b) const {
  switch (kind_) {
    case RingKind::Integers:
      return Element(mpz_class(a.integer() * b.integer()));
    case RingKind::IntegersMod:
      return Element(mod_pos(a.integer() * b.integer(), parameter_));
    case RingKind::TruncatedF2Y:
      return Element(TruncatedBits{clmul(a.bits(), b.bits(), parameter_.get_ui())});
    case RingKind::IntegersLocalized:
      return Element(mpq_class(a.fraction() * b.fraction()));
  }
  return Element();
}

bool Ring::is_unit(const Element& a) const {
  switch (kind_) {
    case RingKind::Integers:
      return abs(a.integer()) == 1;
    case RingKind::IntegersMod:
      return gcd_z(a.integer(), parameter_) == 1;
    case RingKind::TruncatedF2Y:
      return mpz_odd_p(a.bits().get_mpz_t()) != 0;
    case RingKind::IntegersLocalized:
      return a.fraction() != 0 && !mpz_divisible_p(a.fraction().get_num_mpz_t(), parameter_.get_mpz_t());
  }
  return false;
}

Element Ring::inverse(const Element& u) const {
  if (!is_unit(u)) throw UsageError(format(u) + " is not a unit in " + name());
  switch (kind_) {
    case RingKind::Integers:
      return u;
    case RingKind::IntegersMod: {
      mpz_class r;
      mpz_invert(r.get_mpz_t(), u.integer().get_mpz_t(), parameter_.get_mpz_t());
      return Element(r);
    }
    case RingKind::TruncatedF2Y: {
      // u = 1 + n with n nilpotent: u^-1 = sum of n^k.
      unsigned long r = parameter_.get_ui();
      mpz_class n = xor_z(u.bits(), 1);
      mpz_class term = 1;
      mpz_class sum = 0;
      while (term != 0) {
        sum = xor_z(sum, term);
        term = clmul(term, n, r);
      }
      return Element(TruncatedBits{sum});
    }
    case RingKind::IntegersLocalized:
      return Element(mpq_class(1 / u.fraction()));
  }
  return Element();
}

std::optional<Element> Ring::divides(const Element& a, const Element& b) const {
  if (is_zero(b)) return zero();
  if (is_zero(a)) return std::nullopt;
  switch (kind_) {
    case RingKind::Integers:
      if (!mpz_divisible_p(b.integer().get_mpz_t(), a.integer().get_mpz_t())) return std::nullopt;
      return Element(mpz_class(b.integer() / a.integer()));
    case RingKind::IntegersMod: {
      const mpz_class& n = parameter_;
      mpz_class g = gcd_z(a.integer(), n);
      if (!mpz_divisible_p(b.integer().get_mpz_t(), g.get_mpz_t())) return std::nullopt;
      mpz_class m = n / g;
      if (m == 1) return zero();
      mpz_class inv;
      mpz_class ag = mod_pos(a.integer() / g, m);
      mpz_invert(inv.get_mpz_t(), ag.get_mpz_t(), m.get_mpz_t());
      return Element(mod_pos((b.integer() / g) * inv, m));
    }
    case RingKind::TruncatedF2Y: {
      unsigned long r = parameter_.get_ui();
      unsigned long k = bit_valuation(a.bits(), r);
      unsigned long l = bit_valuation(b.bits(), r);
      if (k > l) return std::nullopt;
      Element v_inv = inverse(Element(TruncatedBits{shift_right(a.bits(), k)}));
      mpz_class w = shift_right(b.bits(), l);
      mpz_class c = shift_left(clmul(w, v_inv.bits(), r), l - k);
      return Element(TruncatedBits{truncate_bits(c, r - k)});
    }
    case RingKind::IntegersLocalized: {
      const mpz_class& p = parameter_;
      if (p_valuation(a.fraction().get_num(), p) > p_valuation(b.fraction().get_num(), p)) return std::nullopt;
      return Element(mpq_class(b.fraction() / a.fraction()));
    }
  }
  return std::nullopt;
}

UnitNormal Ring::normalize_unit(const Element& a) const {
  if (is_zero(a)) return {one(), zero()};
  switch (kind_) {
    case RingKind::Integers:
      return {from_integer(sgn(a.integer())), Element(mpz_class(abs(a.integer())))};
    case RingKind::IntegersMod: {
      const mpz_class& n = parameter_;
      mpz_class g = gcd_z(a.integer(), n);
      mpz_class step = n / g;
      mpz_class u = a.integer() / g;
      while (gcd_z(u, n) != 1) u += step;
      return {Element(mod_pos(u, n)), Element(g)};
    }
    case RingKind::TruncatedF2Y: {
      unsigned long k = bit_valuation(a.bits(), parameter_.get_ui());
      return {Element(TruncatedBits{shift_right(a.bits(), k)}), Element(TruncatedBits{shift_left(1, k)})};
    }
    case RingKind::IntegersLocalized: {
      mpz_class pk = power(parameter_, p_valuation(a.fraction().get_num(), parameter_));
      mpq_class u = a.fraction() / mpq_class(pk);
      u.canonicalize();
      return {Element(u), Element(mpq_class(pk))};
    }
  }
  return {one(), a};
}

BezoutResult Ring::gcd_bezout(std::span<const Element> values) const {
  if (values.empty()) throw UsageError("gcd of an empty list");
  BezoutResult out;
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersMod: {
      mpz_class g = 0;
      std::vector<mpz_class> c;
      for (const Element& v : values) {
        ExtGcd e = ext_gcd(g, v.integer());
        for (auto& x : c) x *= e.s;
        c.push_back(e.t);
        g = e.g;
      }
      if (kind_ == RingKind::IntegersMod) {
        const mpz_class& n = parameter_;
        ExtGcd e = ext_gcd(g, n);
        for (auto& x : c) x *= e.s;
        g = mod_pos(e.g, n);
        for (size_t i = 0; i < c.size(); ++i) c[i] = mod_pos(c[i], n / gcd_z(values[i].integer(), n));
      }
      out.gcd = Element(g);
      for (auto& x : c) out.coefficients.push_back(Element(x));
      return out;
    }
    case RingKind::TruncatedF2Y:
    case RingKind::IntegersLocalized: {
      // Divisibility is a total order: the gcd is any element of least valuation.
      out.coefficients.assign(values.size(), zero());
      out.gcd = zero();
      std::optional<size_t> best;
      for (size_t i = 0; i < values.size(); ++i) {
        if (is_zero(values[i])) continue;
        if (!best || !divides(values[*best], values[i])) best = i;
      }
      if (best) {
        UnitNormal un = normalize_unit(values[*best]);
        out.gcd = un.canonical;
        out.coefficients[*best] = inverse(un.unit);
      }
      return out;
    }
  }
  return out;
}

StrictPair Ring::strict_pair(const Element& b1, const Element& b2) const {
  if (is_zero(b1) && is_zero(b2)) throw UsageError("strict gcd of two zeros");
  StrictPair out;
  switch (kind_) {
    case RingKind::Integers: {
      mpz_class d = gcd_z(b1.integer(), b2.integer());
      mpz_class p1 = b1.integer() / d;
      mpz_class p2 = b2.integer() / d;
      ExtGcd e = ext_gcd(p1, p2);
      return {Element(d), Element(p1), Element(p2), Element(e.s), Element(e.t)};
    }
    case RingKind::IntegersMod: {
      const mpz_class& n = parameter_;
      UnitNormal n1 = normalize_unit(b1);
      UnitNormal n2 = normalize_unit(b2);
      mpz_class d1 = is_zero(b1) ? n : n1.canonical.integer();
      mpz_class d2 = is_zero(b2) ? n : n2.canonical.integer();
      mpz_class d = gcd_z(d1, d2);
      ExtGcd e = ext_gcd(d1 / d, d2 / d);
      out.gcd = Element(mod_pos(d, n));
      out.cofactor1 = mul(n1.unit, from_integer(d1 / d));
      out.cofactor2 = mul(n2.unit, from_integer(d2 / d));
      out.coeff1 = mul(from_integer(e.s), inverse(n1.unit));
      out.coeff2 = mul(from_integer(e.t), inverse(n2.unit));
      return out;
    }
    case RingKind::TruncatedF2Y:
    case RingKind::IntegersLocalized: {
      bool first = !is_zero(b1) && (is_zero(b2) || divides(b1, b2).has_value());
      const Element& low = first ? b1 : b2;
      const Element& high = first ? b2 : b1;
      UnitNormal un = normalize_unit(low);
      Element high_q = *divides(un.canonical, high);
      Element c = inverse(un.unit);
      out.gcd = un.canonical;
      if (first) {
        out.cofactor1 = un.unit;
        out.cofactor2 = high_q;
        out.coeff1 = c;
        out.coeff2 = zero();
      } else {
        out.cofactor1 = high_q;
        out.cofactor2 = un.unit;
        out.coeff1 = zero();
        out.coeff2 = c;
      }
      return out;
    }
  }
  return out;
}

Element Ring::ann_gen(const Element& a) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersLocalized:
      return is_zero(a) ? one() : zero();
    case RingKind::IntegersMod:
      return from_integer(parameter_ / gcd_z(a.integer(), parameter_));
    case RingKind::TruncatedF2Y: {
      unsigned long r = parameter_.get_ui();
      unsigned long k = bit_valuation(a.bits(), r);
      return Element(TruncatedBits{truncate_bits(shift_left(1, r - k), r)});
    }
  }
  return zero();
}

EuclidStep Ring::euclid_step(const Element& a, const Element& d) const {
  if (is_zero(d)) return {zero(), a};
  switch (kind_) {
    case RingKind::Integers: {
      // Remainder of least absolute value; ties go to the positive remainder.
      const mpz_class& x = a.integer();
      const mpz_class& y = d.integer();
      mpz_class ay = abs(y);
      mpz_class e = mod_pos(x, ay);
      if (2 * e > ay) e -= ay;
      mpz_class q = (x - e) / y;
      return {Element(q), Element(e)};
    }
    case RingKind::IntegersMod: {
      UnitNormal un = normalize_unit(d);
      const mpz_class& g = un.canonical.integer();
      mpz_class q = a.integer() / g;
      mpz_class e = a.integer() % g;
      if (e == 0) return {*divides(d, a), zero()};
      return {mul(from_integer(q), inverse(un.unit)), Element(e)};
    }
    case RingKind::TruncatedF2Y:
    case RingKind::IntegersLocalized: {
      if (auto c = divides(d, a)) return {*c, zero()};
      return {zero(), a};
    }
  }
  return {zero(), a};
}

bool Ring::needs_parentheses(const Element& a) const {
  if (kind_ != RingKind::TruncatedF2Y) return false;
  return mpz_popcount(a.bits().get_mpz_t()) > 1;
}

std::string Ring::format(const Element& a) const {
  switch (kind_) {
    case RingKind::Integers:
    case RingKind::IntegersMod:
      return a.integer().get_str();
    case RingKind::TruncatedF2Y: {
      if (a.bits() == 0) return "0";
      std::string s;
      size_t top = mpz_sizeinbase(a.bits().get_mpz_t(), 2);
      for (size_t i = top; i-- > 0;) {
        if (!mpz_tstbit(a.bits().get_mpz_t(), i)) continue;
        if (!s.empty()) s += " + ";
        if (i == 0)
          s += "1";
        else if (i == 1)
          s += "y";
        else
          s += "y^" + std::to_string(i);
      }
      return s;
    }
    case RingKind::IntegersLocalized:
      return a.fraction().get_str();
  }
  return "?";
}

std::vector<Element> Ring::elements() const {
  std::vector<Element> out;
  if (kind_ == RingKind::IntegersMod) {
    if (parameter_ > 1 << 20) throw UsageError("ring too large to enumerate");
    for (unsigned long i = 0; i < parameter_.get_ui(); ++i) out.push_back(Element(mpz_class(i)));
  } else if (kind_ == RingKind::TruncatedF2Y) {
    unsigned long r = parameter_.get_ui();
    if (r > 20) throw UsageError("ring too large to enumerate");
    for (unsigned long i = 0; i < (1UL << r); ++i) out.push_back(Element(TruncatedBits{mpz_class(i)}));
  } else {
    throw UsageError("ring " + name() + " is infinite");
  }
  return out;
}

}  // namespace bezout
