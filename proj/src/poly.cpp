#include "bezout/poly.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bezout/errors.hpp"

namespace bezout {

Exponents add_exponents(const Exponents& a, const Exponents& b) {
  if (a.size() != b.size()) throw UsageError("exponent vectors of different lengths");
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t s = std::uint64_t(a[i]) + b[i];
    if (s > std::numeric_limits<std::uint32_t>::max()) throw UsageError("exponent overflow");
    out[i] = static_cast<std::uint32_t>(s);
  }
  return out;
}

std::optional<Exponents> exponent_quotient(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return std::nullopt;
    out[i] = b[i] - a[i];
  }
  return out;
}

Exponents lcm_exponents(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool is_constant(const Exponents& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t e) { return e == 0; });
}

Exponents positive_difference(const Exponents& a, const Exponents& b) {
  Exponents out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] > b[i] ? a[i] - b[i] : 0;
  return out;
}

Exponents positive_part(std::span<const long long> alpha) {
  Exponents out(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > std::numeric_limits<std::uint32_t>::max()) throw UsageError("exponent overflow");
    out[i] = alpha[i] > 0 ? static_cast<std::uint32_t>(alpha[i]) : 0;
  }
  return out;
}

std::optional<Exponents> mono_divides(const ModuleMonomial& m, const ModuleMonomial& n) {
  if (m.position != n.position) return std::nullopt;
  return exponent_quotient(m.exponents, n.exponents);
}

std::optional<RingTerm> term_divides(const Ring& ring, const Term& t, const Term& u) {
  auto gamma = mono_divides(t.mono, u.mono);
  if (!gamma) return std::nullopt;
  auto c = ring.divides(t.coeff, u.coeff);
  if (!c) return std::nullopt;
  return RingTerm{*c, *gamma};
}

// ---------------------------------------------------------------- orders

OrderPtr MonomialOrder::top_lex(Space space, std::vector<std::size_t> priority) {
  if (priority.empty()) {
    priority.resize(space.nvars);
    std::iota(priority.begin(), priority.end(), 0);
  }
  std::vector<std::size_t> sorted = priority;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i || sorted.size() != space.nvars) throw UsageError("variable priority is not a permutation");
  if (space.rank == 0) throw UsageError("module rank must be positive");
  std::shared_ptr<MonomialOrder> o(new MonomialOrder());
  o->kind_ = Kind::TopLex;
  o->space_ = space;
  o->priority_ = priority;
  if (space.rank != 1) o->polynomial_order_ = top_lex(Space{space.ring, space.nvars, 1}, priority);
  return o;
}

OrderPtr MonomialOrder::schreyer(std::vector<ModuleVector> images) {
  if (images.empty()) throw UsageError("Schreyer order needs at least one image");
  const OrderPtr& parent = images.front().order();
  std::shared_ptr<MonomialOrder> o(new MonomialOrder());
  for (const ModuleVector& g : images) {
    if (!same_order(g.order(), parent)) throw UsageError("Schreyer images live under different orders");
    if (g.is_zero()) throw InvariantViolation("Schreyer image is zero");
    o->image_lms_.push_back(g.leading_monomial());
  }
  o->kind_ = Kind::Schreyer;
  o->space_ = Space{parent->ring(), parent->space().nvars, images.size()};
  o->priority_ = parent->priority();
  o->parent_ = parent;
  o->polynomial_order_ = parent->polynomial_order();
  o->images_ = std::make_shared<const std::vector<ModuleVector>>(std::move(images));
  return o;
}

OrderPtr MonomialOrder::polynomial_order() const {
  if (polynomial_order_) return polynomial_order_;
  return shared_from_this();
}

OrderPtr MonomialOrder::top_lex_with_rank(std::size_t rank) const {
  return top_lex(Space{space_.ring, space_.nvars, rank}, priority_);
}

int MonomialOrder::compare_exponents(const Exponents& a, const Exponents& b) const {
  for (std::size_t idx : priority_) {
    if (a[idx] != b[idx]) return a[idx] > b[idx] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const ModuleMonomial& a, const ModuleMonomial& b) const {
  if (kind_ == Kind::TopLex) {
    int c = compare_exponents(a.exponents, b.exponents);
    if (c != 0) return c;
    if (a.position == b.position) return 0;
    return a.position < b.position ? 1 : -1;
  }
  const ModuleMonomial& la = image_lms_.at(a.position);
  const ModuleMonomial& lb = image_lms_.at(b.position);
  ModuleMonomial pa{add_exponents(a.exponents, la.exponents), la.position};
  ModuleMonomial pb{add_exponents(b.exponents, lb.exponents), lb.position};
  int c = parent_->compare(pa, pb);
  if (c != 0) return c;
  if (a.position == b.position) return 0;
  return a.position < b.position ? 1 : -1;
}

bool MonomialOrder::same_as(const MonomialOrder& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_ || !(space_ == other.space_) || priority_ != other.priority_) return false;
  if (kind_ == Kind::TopLex) return true;
  if (images_ == other.images_) return true;
  return *images_ == *other.images_;
}

std::string MonomialOrder::describe() const {
  std::string s;
  if (kind_ == Kind::Schreyer) return "schreyer(" + std::to_string(space_.rank) + " images)";
  s = "top-lex(";
  for (std::size_t i = 0; i < priority_.size(); ++i) s += (i ? "," : "") + std::to_string(priority_[i]);
  return s + ")";
}

bool same_order(const OrderPtr& a, const OrderPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

// ---------------------------------------------------------------- vectors

namespace {

struct Descending {
  const MonomialOrder* order;
  bool operator()(const Term& a, const Term& b) const { return order->compare(a.mono, b.mono) > 0; }
};

}  // namespace

ModuleVector ModuleVector::from_terms(OrderPtr order, std::vector<Term> terms) {
  const Space& sp = order->space();
  for (const Term& t : terms) {
    if (t.mono.exponents.size() != sp.nvars) throw UsageError("monomial has the wrong number of variables");
    if (t.mono.position >= sp.rank) throw UsageError("monomial position outside the module rank");
    sp.ring.check(t.coeff);
  }
  std::sort(terms.begin(), terms.end(), Descending{order.get()});
  std::vector<Term> out;
  out.reserve(terms.size());
  for (Term& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = sp.ring.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && sp.ring.is_zero(out.back().coeff)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sp.ring.is_zero(out.back().coeff)) out.pop_back();
  return ModuleVector(std::move(order), std::move(out));
}

ModuleVector ModuleVector::constant(OrderPtr order, const Element& c, std::size_t position) {
  Exponents zero(order->space().nvars, 0);
  return from_terms(order, {Term{c, ModuleMonomial{zero, position}}});
}

ModuleVector ModuleVector::unit_vector(OrderPtr order, std::size_t position) {
  Element one = order->ring().one();
  return constant(std::move(order), one, position);
}

const Term& ModuleVector::leading_term() const {
  if (terms_.empty()) throw UsageError("leading term of zero vector");
  return terms_.front();
}

std::size_t ModuleVector::leading_position() const {
  if (terms_.empty()) throw UsageError("leading position of zero vector");
  return terms_.front().mono.position;
}

MultiDegree ModuleVector::mdeg() const {
  if (terms_.empty()) return MultiDegree{};
  return MultiDegree{false, terms_.front().mono.exponents};
}

void ModuleVector::require_same_order(const ModuleVector& other) const {
  if (!same_order(order_, other.order_)) throw UsageError("vectors live under different monomial orders");
}

ModuleVector ModuleVector::add(const ModuleVector& other) const {
  require_same_order(other);
  const Ring& ring = order_->ring();
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < other.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == other.terms_.size())
      c = 1;
    else
      c = order_->compare(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(other.terms_[j++]);
    } else {
      Element s = ring.add(terms_[i].coeff, other.terms_[j].coeff);
      if (!ring.is_zero(s)) out.push_back(Term{std::move(s), terms_[i].mono});
      ++i;
      ++j;
    }
  }
  return ModuleVector(order_, std::move(out));
}

ModuleVector ModuleVector::neg() const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coeff = order_->ring().neg(t.coeff);
  return ModuleVector(order_, std::move(out));
}

ModuleVector ModuleVector::sub(const ModuleVector& other) const { return add(other.neg()); }

ModuleVector ModuleVector::scaled(const Element& c) const {
  return times(RingTerm{c, Exponents(space().nvars, 0)});
}

ModuleVector ModuleVector::shifted(const Exponents& gamma) const {
  return times(RingTerm{order_->ring().one(), gamma});
}

ModuleVector ModuleVector::times(const RingTerm& t) const {
  const Ring& ring = order_->ring();
  std::vector<Term> out;
  if (ring.is_zero(t.coeff)) return ModuleVector(order_, std::move(out));
  out.reserve(terms_.size());
  for (const Term& s : terms_) {
    Element c = ring.mul(t.coeff, s.coeff);
    if (ring.is_zero(c)) continue;
    out.push_back(Term{std::move(c), ModuleMonomial{add_exponents(s.mono.exponents, t.exponents), s.mono.position}});
  }
  return ModuleVector(order_, std::move(out));
}

ModuleVector ModuleVector::reordered(OrderPtr order) const {
  if (!(order->space() == space())) throw UsageError("cannot reorder into a different ambient module");
  return from_terms(std::move(order), terms_);
}

ModuleVector ModuleVector::component(std::size_t position) const {
  std::vector<Term> out;
  for (const Term& t : terms_)
    if (t.mono.position == position) out.push_back(Term{t.coeff, ModuleMonomial{t.mono.exponents, 0}});
  return from_terms(order_->polynomial_order(), std::move(out));
}

bool operator==(const ModuleVector& a, const ModuleVector& b) {
  return same_order(a.order_, b.order_) && a.terms_ == b.terms_;
}

ModuleVector multiply(const ModuleVector& poly, const ModuleVector& v) {
  if (!(poly.ring() == v.ring()) || poly.space().nvars != v.space().nvars)
    throw UsageError("polynomial and vector over different rings");
  std::vector<Term> out;
  for (const Term& p : poly.terms()) {
    ModuleVector part = v.times(RingTerm{p.coeff, p.mono.exponents});
    out.insert(out.end(), part.terms().begin(), part.terms().end());
  }
  return ModuleVector::from_terms(v.order(), std::move(out));
}

ModuleVector embed(const ModuleVector& poly, std::size_t position, const OrderPtr& order) {
  std::vector<Term> out;
  for (const Term& t : poly.terms()) out.push_back(Term{t.coeff, ModuleMonomial{t.mono.exponents, position}});
  return ModuleVector::from_terms(order, std::move(out));
}

ModuleVector evaluate(const ModuleVector& u, std::span<const ModuleVector> images) {
  if (images.empty()) throw UsageError("evaluate needs at least one image");
  if (u.space().rank != images.size()) throw UsageError("vector rank does not match the number of images");
  std::vector<Term> out;
  for (const Term& t : u.terms()) {
    ModuleVector part = images[t.mono.position].times(RingTerm{t.coeff, t.mono.exponents});
    out.insert(out.end(), part.terms().begin(), part.terms().end());
  }
  return ModuleVector::from_terms(images.front().order(), std::move(out));
}

// ---------------------------------------------------------------- text

std::string format_monomial(const Exponents& e, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

namespace {

bool is_negative(const Element& c) {
  if (c.holds_integer()) return c.integer() < 0;
  if (c.holds_fraction()) return c.fraction() < 0;
  return false;
}

std::string format_terms(const Ring& ring, const std::vector<const Term*>& terms, std::span<const std::string> names) {
  if (terms.empty()) return "0";
  std::string s;
  for (const Term* t : terms) {
    bool negative = is_negative(t->coeff) && ring.kind() != RingKind::IntegersMod;
    Element mag = negative ? ring.neg(t->coeff) : t->coeff;
    std::string mono = format_monomial(t->mono.exponents, names);
    std::string body;
    if (mono.empty()) {
      body = ring.format(mag);
    } else if (mag == ring.one()) {
      body = mono;
    } else {
      std::string c = ring.format(mag);
      if (ring.needs_parentheses(mag)) c = "(" + c + ")";
      body = c + "*" + mono;
    }
    if (s.empty())
      s = negative ? "-" + body : body;
    else
      s += (negative ? " - " : " + ") + body;
  }
  return s;
}

}  // namespace

std::string format_polynomial(const ModuleVector& poly, std::span<const std::string> names) {
  std::vector<const Term*> ts;
  for (const Term& t : poly.terms()) ts.push_back(&t);
  return format_terms(poly.ring(), ts, names);
}

std::string format_vector(const ModuleVector& v, std::span<const std::string> names) {
  std::size_t rank = v.space().rank;
  std::vector<std::vector<const Term*>> parts(rank);
  for (const Term& t : v.terms()) parts[t.mono.position].push_back(&t);
  if (rank == 1) return format_terms(v.ring(), parts[0], names);
  std::string s = "[";
  for (std::size_t i = 0; i < rank; ++i) {
    if (i) s += ", ";
    s += format_terms(v.ring(), parts[i], names);
  }
  return s + "]";
}

}  // namespace bezout
