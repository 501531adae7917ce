#include "bezout/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <regex>
#include <set>

namespace bezout {

std::vector<ModuleVector> ProblemFile::vectors() const {
  std::vector<ModuleVector> out;
  for (const auto& [name, v] : generators) out.push_back(v);
  return out;
}

namespace {

const std::size_t kMaxPower = 1000;

struct Ambient {
  Ring ring;
  std::vector<std::string> vars;
  std::size_t rank = 1;
  OrderPtr poly_order;
  OrderPtr module_order;
};

class Reader {
 public:
  explicit Reader(std::string_view src) : src_(src) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }
  [[noreturn]] void fail_at(const std::string& msg, std::size_t line, std::size_t col) const {
    throw ParseError(msg, line, col);
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }

  char peek() {
    skip_space();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + src_[pos_] + "'");
    }
  }

  bool peek_ident() {
    char c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string ident() {
    if (!peek_ident()) fail("expected a name");
    std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  bool peek_number() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  mpz_class number() {
    if (!peek_number()) fail("expected a number");
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  // Raw text up to (not including) the next ';'.
  std::string until_semicolon() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < src_.size() && src_[pos_] != ';' && src_[pos_] != '\n') advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  std::size_t line() {
    skip_space();
    return line_;
  }
  std::size_t column() {
    skip_space();
    return col_;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class ExprParser {
 public:
  ExprParser(Reader& in, const Ambient& amb) : in_(in), amb_(amb) {}

  ModuleVector vector() {
    std::size_t line = in_.line(), col = in_.column();
    std::vector<ModuleVector> comps;
    if (in_.accept('[')) {
      comps.push_back(expr());
      while (in_.accept(',')) comps.push_back(expr());
      in_.expect(']');
    } else {
      comps.push_back(expr());
    }
    if (comps.size() != amb_.rank)
      in_.fail_at("rank mismatch: expected " + std::to_string(amb_.rank) + " components, got " +
                      std::to_string(comps.size()),
                  line, col);
    std::vector<Term> ts;
    for (std::size_t i = 0; i < comps.size(); ++i)
      for (const Term& t : comps[i].terms()) ts.push_back(Term{t.coeff, ModuleMonomial{t.mono.exponents, i}});
    return ModuleVector::from_terms(amb_.module_order, std::move(ts));
  }

 private:
  ModuleVector expr() {
    ModuleVector acc = product();
    for (;;) {
      if (in_.accept('+'))
        acc = acc.add(product());
      else if (in_.accept('-'))
        acc = acc.sub(product());
      else
        return acc;
    }
  }

  ModuleVector product() {
    ModuleVector acc = unary();
    for (;;) {
      if (in_.accept('*')) {
        acc = multiply(acc, unary());
      } else if (in_.peek() == '/') {
        std::size_t line = in_.line(), col = in_.column();
        in_.accept('/');
        ModuleVector d = unary();
        acc = acc.scaled(unit_inverse(d, line, col));
      } else {
        return acc;
      }
    }
  }

  Element unit_inverse(const ModuleVector& d, std::size_t line, std::size_t col) {
    const Ring& ring = amb_.ring;
    if (d.is_zero()) in_.fail_at("division by zero", line, col);
    if (d.size() != 1 || !is_constant(d.leading_monomial().exponents))
      in_.fail_at("can only divide by a constant", line, col);
    const Element& c = d.leading_coefficient();
    if (!ring.is_unit(c)) in_.fail_at("bad coefficient: " + ring.format(c) + " is not invertible in " + ring.name(), line, col);
    return ring.inverse(c);
  }

  ModuleVector unary() {
    if (in_.accept('-')) return unary().neg();
    if (in_.accept('+')) return unary();
    return power();
  }

  ModuleVector power() {
    ModuleVector base = atom();
    if (!in_.accept('^')) return base;
    std::size_t line = in_.line(), col = in_.column();
    mpz_class e = in_.number();
    if (e > kMaxPower) in_.fail_at("exponent too large", line, col);
    ModuleVector acc = ModuleVector::constant(amb_.poly_order, amb_.ring.one());
    for (unsigned long k = 0; k < e.get_ui(); ++k) acc = multiply(acc, base);
    return acc;
  }

  ModuleVector atom() {
    if (in_.accept('(')) {
      ModuleVector v = expr();
      in_.expect(')');
      return v;
    }
    if (in_.peek_number()) return ModuleVector::constant(amb_.poly_order, amb_.ring.from_integer(in_.number()));
    if (in_.peek_ident()) {
      std::size_t line = in_.line(), col = in_.column();
      std::string name = in_.ident();
      if (name == "y" && amb_.ring.kind() == RingKind::TruncatedF2Y)
        return ModuleVector::constant(amb_.poly_order, amb_.ring.nilpotent());
      auto it = std::find(amb_.vars.begin(), amb_.vars.end(), name);
      if (it == amb_.vars.end()) in_.fail_at("unknown variable '" + name + "'", line, col);
      Exponents e(amb_.vars.size(), 0);
      e[it - amb_.vars.begin()] = 1;
      return ModuleVector::from_terms(amb_.poly_order, {Term{amb_.ring.one(), ModuleMonomial{e, 0}}});
    }
    if (in_.at_end()) in_.fail("unexpected end of input");
    in_.fail(std::string("unexpected character '") + in_.peek() + "'");
  }

  Reader& in_;
  const Ambient& amb_;
};

Ambient make_ambient(const Ring& ring, const std::vector<std::string>& vars, std::size_t rank) {
  Ambient a{ring, vars, rank, nullptr, nullptr};
  a.poly_order = MonomialOrder::top_lex(Space{ring, vars.size(), 1});
  a.module_order = rank == 1 ? a.poly_order : MonomialOrder::top_lex(Space{ring, vars.size(), rank});
  return a;
}

std::string strip_spaces(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

}  // namespace

Ring parse_ring(std::string_view spec) {
  std::string s = strip_spaces(std::string(spec));
  static const std::regex z("Z"), zn("Z/([0-9]+)"), f2("F2\\[y\\]/y\\^([0-9]+)"), loc("Z_\\(([0-9]+)\\)");
  std::smatch m;
  if (std::regex_match(s, z)) return Ring::integers();
  if (std::regex_match(s, m, zn)) return Ring::integers_mod(mpz_class(m[1].str()));
  if (std::regex_match(s, m, f2)) {
    if (m[1].str().size() > 6) throw UsageError("nilpotency index too large");
    return Ring::truncated_f2y(static_cast<unsigned>(std::stoul(m[1].str())));
  }
  if (std::regex_match(s, m, loc)) return Ring::localized_at(mpz_class(m[1].str()));
  throw UsageError("unknown ring '" + s + "'");
}

ProblemFile parse_problem(std::string_view text) {
  Reader in(text);
  ProblemFile out;
  bool have_ring = false, have_vars = false, have_rank = false;
  std::optional<Ambient> amb;
  std::set<std::string> names;
  while (!in.at_end()) {
    std::size_t line = in.line(), col = in.column();
    std::string word = in.ident();
    if (word == "ring" && in.peek() != '=') {
      if (have_ring) in.fail_at("duplicate ring declaration", line, col);
      if (amb) in.fail_at("ring declared after generators", line, col);
      std::size_t sl = in.line(), sc = in.column();
      std::string spec = in.until_semicolon();
      try {
        out.ring = parse_ring(spec);
      } catch (const ParseError&) {
        throw;
      } catch (const UsageError& e) {
        in.fail_at(e.what(), sl, sc);
      }
      have_ring = true;
    } else if (word == "vars" && in.peek() != '=') {
      if (have_vars) in.fail_at("duplicate vars declaration", line, col);
      if (amb) in.fail_at("vars declared after generators", line, col);
      while (in.peek_ident()) {
        std::size_t vl = in.line(), vc = in.column();
        std::string v = in.ident();
        if (std::find(out.vars.begin(), out.vars.end(), v) != out.vars.end())
          in.fail_at("duplicate variable '" + v + "'", vl, vc);
        if (v == "ring" || v == "vars" || v == "rank") in.fail_at("'" + v + "' is reserved", vl, vc);
        out.vars.push_back(v);
      }
      have_vars = true;
    } else if (word == "rank" && in.peek() != '=') {
      if (have_rank) in.fail_at("duplicate rank declaration", line, col);
      if (amb) in.fail_at("rank declared after generators", line, col);
      std::size_t rl = in.line(), rc = in.column();
      mpz_class r = in.number();
      if (r < 1 || r > 10000) in.fail_at("rank must be between 1 and 10000", rl, rc);
      out.rank = r.get_ui();
      have_rank = true;
    } else {
      if (!have_ring) in.fail_at("generator '" + word + "' before the ring declaration", line, col);
      if (!have_vars) in.fail_at("generator '" + word + "' before the vars declaration", line, col);
      if (!amb) {
        if (out.ring.kind() == RingKind::TruncatedF2Y &&
            std::find(out.vars.begin(), out.vars.end(), "y") != out.vars.end())
          in.fail_at("'y' names the nilpotent of " + out.ring.name() + " and cannot be a variable", line, col);
        amb = make_ambient(out.ring, out.vars, out.rank);
        out.order = amb->module_order;
      }
      if (names.count(word)) in.fail_at("duplicate name '" + word + "'", line, col);
      if (std::find(out.vars.begin(), out.vars.end(), word) != out.vars.end())
        in.fail_at("'" + word + "' is already a variable", line, col);
      in.expect('=');
      ExprParser p(in, *amb);
      out.generators.emplace_back(word, p.vector());
      names.insert(word);
    }
    in.expect(';');
  }
  if (!have_ring) throw ParseError("missing ring declaration", in.line(), in.column());
  if (!have_vars) throw ParseError("missing vars declaration", in.line(), in.column());
  if (!amb) out.order = make_ambient(out.ring, out.vars, out.rank).module_order;
  return out;
}

ModuleVector parse_vector(std::string_view text, const Ring& ring, const std::vector<std::string>& vars,
                          std::size_t rank) {
  Ambient amb = make_ambient(ring, vars, rank);
  Reader in(text);
  ExprParser p(in, amb);
  ModuleVector v = p.vector();
  if (!in.at_end()) in.fail(std::string("unexpected '") + in.peek() + "' after the expression");
  return v;
}

ModuleVector parse_vector(std::string_view text, const ProblemFile& problem) {
  return parse_vector(text, problem.ring, problem.vars, problem.rank);
}

}  // namespace bezout
