#include "bezout/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "bezout/errors.hpp"

namespace bezout::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kNormalization =
    "leading coefficients are canonical associates; elements sorted by leading monomial, descending";

const char* command_name(Command c) {
  switch (c) {
    case Command::Gb: return "gb";
    case Command::Reduce: return "reduce";
    case Command::Member: return "member";
    case Command::Syz: return "syz";
    case Command::Resolve: return "resolve";
  }
  return "";
}

// "lex:X,Y" -> priority of each variable, greatest first.
std::vector<std::size_t> parse_order(const std::string& spec, const std::vector<std::string>& vars) {
  if (spec.rfind("lex:", 0) != 0) throw UsageError("order must look like lex:V1,V2,...");
  std::vector<std::size_t> priority;
  std::stringstream in(spec.substr(4));
  std::string name;
  while (std::getline(in, name, ',')) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw UsageError("order names unknown variable '" + name + "'");
    std::size_t k = static_cast<std::size_t>(it - vars.begin());
    if (std::find(priority.begin(), priority.end(), k) != priority.end())
      throw UsageError("order lists '" + name + "' twice");
    priority.push_back(k);
  }
  if (priority.size() != vars.size()) throw UsageError("order must list every variable exactly once");
  return priority;
}

// Sorted by leading monomial descending; stable for equal ones.
template <class T, class Key>
void sort_by_leading(std::vector<T>& items, Key key) {
  std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    const ModuleVector& u = key(a);
    const ModuleVector& v = key(b);
    if (u.is_zero() || v.is_zero()) return !u.is_zero() && v.is_zero();
    return u.order()->compare(u.leading_monomial(), v.leading_monomial()) > 0;
  });
}

class Renderer {
 public:
  Renderer(const ProblemFile& p, std::vector<std::string> shown_vars) : p_(p), vars_(std::move(shown_vars)) {}

  std::string vec(const ModuleVector& v) {
    std::string s = format_vector(v, p_.vars);
    payloads.push_back(Payload{s, v});
    return s;
  }
  std::string elem(const Element& e) const { return p_.ring.format(e); }

  std::string term(const Term& t, const OrderPtr& order) const {
    OrderPtr po = order->polynomial_order() ? order->polynomial_order() : order;
    return format_vector(ModuleVector::from_terms(po, {Term{t.coeff, ModuleMonomial{t.mono.exponents, 0}}}), p_.vars);
  }

  // <a, b>e1 + <c>e2, or <a, b> in rank 1.
  std::string term_module(const std::vector<Term>& ts, const OrderPtr& order, std::size_t rank) const {
    std::string out;
    for (std::size_t pos = 0; pos < rank; ++pos) {
      std::string inner;
      for (const Term& t : ts)
        if (t.mono.position == pos) inner += (inner.empty() ? "" : ", ") + term(t, order);
      if (inner.empty()) continue;
      if (!out.empty()) out += " + ";
      out += "<" + inner + ">";
      if (rank > 1) out += "e" + std::to_string(pos + 1);
    }
    return out.empty() ? "0" : out;
  }

  json term_module_json(const std::vector<Term>& ts, const OrderPtr& order) const {
    json out = json::array();
    for (const Term& t : ts)
      out.push_back({{"position", t.mono.position + 1}, {"term", term(t, order)}});
    return out;
  }

  std::string header() const {
    std::string v;
    for (const std::string& s : vars_) v += (v.empty() ? "" : " ") + s;
    return "ring " + p_.ring.name() + ";\nvars " + v + ";\n";
  }

  json head(Command c) const {
    return {{"command", command_name(c)},
            {"ring", p_.ring.name()},
            {"vars", vars_},
            {"rank", p_.rank},
            {"normalization", kNormalization}};
  }

  std::vector<Payload> payloads;

 private:
  const ProblemFile& p_;
  std::vector<std::string> vars_;
};

std::vector<ModuleVector> groebner(const Options& o, std::vector<ModuleVector> gens, DivisionMethod method,
                                   const TraceSink& trace) {
  BuchbergerOptions bo;
  bo.method = method;
  bo.trace = trace;
  GroebnerBasis gb = buchberger(gens, bo);
  if (!o.no_pseudo_reduce) gb = pseudo_reduce(gb, bo);
  std::vector<ModuleVector> out;
  for (const ModuleVector& g : gb.elements) out.push_back(normalized(g));
  sort_by_leading(out, [](const ModuleVector& v) -> const ModuleVector& { return v; });
  return out;
}

void basis_section(Renderer& r, std::ostringstream& text, json& j, const std::vector<ModuleVector>& basis,
                   const std::string& prefix) {
  json list = json::array();
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::string s = r.vec(basis[k]);
    text << prefix << (k + 1) << " = " << s << ";\n";
    list.push_back(s);
  }
  j = list;
}

std::string label_name(const std::string& label, std::size_t level) {
  return (level == 0 ? "g" : "u") + label;
}

json level_json(Renderer& r, const ResolutionLevel& lv, std::size_t index) {
  json els = json::array();
  for (std::size_t k = 0; k < lv.basis.size(); ++k)
    els.push_back({{"label", label_name(lv.labels[k], index)}, {"value", r.vec(lv.basis[k])}});
  std::vector<Term> nf = lt_normal_form(lv.order, leading_terms(lv.basis));
  return {{"level", index},
          {"rank", lv.rank},
          {"elements", els},
          {"leading_terms", r.term_module_json(leading_terms(lv.basis), lv.order)},
          {"lt_normal_form", r.term_module_json(nf, lv.order)}};
}

void level_text(Renderer& r, std::ostringstream& text, const ResolutionLevel& lv, std::size_t index,
                const std::string& title) {
  text << title << ": rank " << lv.rank << ", " << lv.basis.size() << " element" << (lv.basis.size() == 1 ? "" : "s")
       << "\n";
  for (std::size_t k = 0; k < lv.basis.size(); ++k)
    text << "  " << label_name(lv.labels[k], index) << " = " << r.vec(lv.basis[k]) << "\n";
  std::vector<Term> lts = leading_terms(lv.basis);
  std::string shown = r.term_module(lts, lv.order, lv.rank);
  std::string nf = r.term_module(lt_normal_form(lv.order, lts), lv.order, lv.rank);
  text << "  LT = " << shown << "\n";
  if (nf != shown) text << "  LT normal form = " << nf << "\n";
}

std::string tuple(const Renderer& r, const std::vector<Element>& xs) {
  std::string out;
  for (const Element& x : xs) out += (out.empty() ? "" : ", ") + r.elem(x);
  return "(" + out + ")";
}

}  // namespace

ModuleVector normalized(const ModuleVector& v) {
  if (v.is_zero()) return v;
  const Ring& ring = v.ring();
  UnitNormal n = ring.normalize_unit(v.leading_coefficient());
  return v.scaled(ring.inverse(n.unit));
}

Document run_command(const Options& o, const ProblemFile& p, const TraceSink& trace) {
  std::vector<std::string> shown = p.vars;
  OrderPtr order = p.order;
  if (!o.order.empty()) {
    if (o.command == Command::Resolve && !o.unsafe_order)
      throw UsageError(
          "resolve refuses an order override: termination is only covered for the lex position-over-term "
          "order; pass --unsafe-order to proceed");
    std::vector<std::size_t> priority = parse_order(o.order, p.vars);
    order = MonomialOrder::top_lex(Space{p.ring, p.vars.size(), p.rank}, priority);
    shown.clear();
    for (std::size_t k : priority) shown.push_back(p.vars[k]);
  }
  if (p.generators.empty()) throw UsageError("the file declares no generators");
  DivisionMethod method = DivisionMethod::Bezout;
  if (o.valuation_division) {
    if (!p.ring.is_valuation_ring())
      throw UsageError("--valuation-division needs a valuation ring; " + p.ring.name() + " is not one");
    method = DivisionMethod::Valuation;
  }
  if (o.command != Command::Resolve && (o.quotient || o.max_levels))
    throw UsageError("--quotient and --max-levels only apply to resolve");

  std::vector<ModuleVector> gens;
  for (const auto& [name, v] : p.generators) {
    if (v.is_zero()) throw UsageError("generator '" + name + "' is zero");
    gens.push_back(v.reordered(order));
  }

  Renderer r(p, shown);
  Document doc;
  doc.json = r.head(o.command);
  if (!o.order.empty()) doc.json["order"] = o.order;
  std::ostringstream text;
  text << "# " << command_name(o.command) << ": " << kNormalization << "\n" << r.header();

  switch (o.command) {
    case Command::Gb: {
      std::vector<ModuleVector> gb = groebner(o, gens, method, trace);
      text << "rank " << p.rank << ";\n";
      text << "# " << (o.no_pseudo_reduce ? "Groebner basis" : "pseudo-reduced Groebner basis") << ", " << gb.size()
           << " element" << (gb.size() == 1 ? "" : "s") << "\n";
      json basis;
      basis_section(r, text, basis, gb, "g");
      std::vector<Term> lts = leading_terms(gb);
      text << "# LT = " << r.term_module(lts, order, p.rank) << "\n";
      doc.json["result"] = {{"basis", basis},
                            {"pseudo_reduced", !o.no_pseudo_reduce},
                            {"leading_terms", r.term_module_json(lts, order)}};
      break;
    }
    case Command::Reduce:
    case Command::Member: {
      ModuleVector h = parse_vector(o.target, p).reordered(order);
      std::vector<ModuleVector> gb = groebner(o, gens, method, trace);
      GroebnerBasis g{gb, order, !o.no_pseudo_reduce};
      text << "rank " << p.rank << ";\n# Groebner basis\n";
      json basis;
      basis_section(r, text, basis, gb, "g");
      json result{{"target", r.vec(h)}, {"basis", basis}};
      if (o.command == Command::Reduce) {
        DivisionResult d = divide(h, gb, method);
        json qs = json::array();
        text << "# target = " << format_vector(h, p.vars) << "\n";
        for (std::size_t k = 0; k < d.quotients.size(); ++k) {
          std::string s = r.vec(d.quotients[k]);
          qs.push_back(s);
          text << "# q" << (k + 1) << " = " << s << "\n";
        }
        std::string rem = r.vec(d.remainder);
        text << "# remainder = " << rem << "\n";
        result["quotients"] = qs;
        result["remainder"] = rem;
      } else {
        auto cert = module_member(h, g, method);
        text << "# target = " << format_vector(h, p.vars) << "\n";
        text << (cert ? "yes" : "no") << "\n";
        result["member"] = cert.has_value();
        if (cert) {
          json qs = json::array();
          for (std::size_t k = 0; k < cert->size(); ++k) {
            std::string s = r.vec((*cert)[k]);
            qs.push_back(s);
            text << "# c" << (k + 1) << " = " << s << "\n";
          }
          result["certificate"] = qs;
        }
      }
      doc.json["result"] = result;
      break;
    }
    case Command::Syz: {
      std::vector<ModuleVector> gb = groebner(o, gens, method, trace);
      text << "rank " << p.rank << ";\n# source: Groebner basis\n";
      json source;
      basis_section(r, text, source, gb, "g");
      SyzygyBasis s = schreyer_syzygies(gb, method, true);
      struct Rel {
        ModuleVector v;
        std::string label;
      };
      std::vector<Rel> rels;
      for (std::size_t k = 0; k < s.relations.size(); ++k)
        rels.push_back({normalized(s.relations[k]),
                        std::to_string(s.pairs[k].first + 1) + "," + std::to_string(s.pairs[k].second + 1)});
      sort_by_leading(rels, [](const Rel& x) -> const ModuleVector& { return x.v; });
      text << "# relations in R[X]^" << gb.size() << ", Schreyer order induced by g1..g" << gb.size() << "\n";
      json list = json::array();
      std::vector<ModuleVector> vs;
      for (const Rel& x : rels) {
        std::string v = r.vec(x.v);
        text << "#   u" << x.label << " = " << v << "\n";
        list.push_back({{"label", "u" + x.label}, {"value", v}});
        vs.push_back(x.v);
      }
      std::vector<Term> nf = lt_normal_form(s.order, leading_terms(vs));
      text << "# LT = " << r.term_module(nf, s.order, gb.size()) << "\n";
      doc.json["result"] = {{"source", source},
                            {"rank", gb.size()},
                            {"relations", list},
                            {"leading_terms", r.term_module_json(leading_terms(vs), s.order)},
                            {"lt_normal_form", r.term_module_json(nf, s.order)}};
      break;
    }
    case Command::Resolve: {
      ResolutionOptions ro;
      ro.max_levels = o.max_levels;
      ro.method = method;
      ro.quotient = o.quotient;
      ro.pseudo_reduce_input = !o.no_pseudo_reduce;
      ro.trace = trace;
      std::vector<ModuleVector> input;
      for (const ModuleVector& g : gens) input.push_back(normalized(g));
      Resolution res = free_resolution(input, ro);
      VerificationReport rep = verify_resolution(res);
      json levels = json::array();
      for (std::size_t k = 0; k < res.levels.size(); ++k) {
        levels.push_back(level_json(r, res.levels[k], k));
        level_text(r, text, res.levels[k], k, "level " + std::to_string(k));
      }
      const ResolutionTail& t = res.tail;
      json tail{{"kind", t.kind == TailKind::Free ? "free" : "periodic"}};
      text << "tail: " << (t.kind == TailKind::Free ? "free" : "periodic") << "\n";
      if (t.kind == TailKind::Periodic) {
        auto strs = [&](const std::vector<Element>& xs) {
          json a = json::array();
          for (const Element& x : xs) a.push_back(r.elem(x));
          return a;
        };
        tail["b"] = strs(t.b);
        tail["ann_b"] = strs(t.ann_b);
        tail["ann_ann_b"] = strs(t.ann_ann_b);
        text << "  b = " << tuple(r, t.b) << "\n  ann(b) = " << tuple(r, t.ann_b)
             << "\n  ann(ann(b)) = " << tuple(r, t.ann_ann_b) << "\n";
        text << "  kernels alternate ann(b) and ann(ann(b)) from level " << res.levels.size() << " on\n";
      }
      if (t.check_level) {
        tail["check_level"] = level_json(r, *t.check_level, res.levels.size());
        level_text(r, text, *t.check_level, res.levels.size(), "  check level " + std::to_string(res.levels.size()));
      }
      std::size_t length = res.quotient ? res.quotient_length() : res.length();
      text << (res.quotient ? "length of the resolution of H/U: " : "length: ") << length << "\n";
      json failures = json::array();
      for (const VerificationEntry& e : rep.failures()) {
        failures.push_back({{"level", e.level}, {"check", e.check}, {"witness", e.witness}});
        text << "verification FAILED at level " << e.level << ": " << e.check << " " << e.witness << "\n";
      }
      if (rep.ok()) text << "verification: ok, " << rep.entries.size() << " checks\n";
      doc.json["result"] = {{"levels", levels},
                            {"tail", tail},
                            {"length", length},
                            {"quotient", res.quotient},
                            {"verification", {{"ok", rep.ok()}, {"checks", rep.entries.size()}, {"failures", failures}}}};
      if (!rep.ok()) doc.exit_code = kInternal;
      break;
    }
  }
  doc.text = text.str();
  doc.payloads = std::move(r.payloads);
  return doc;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groebner bases, syzygies and free resolutions over Z, Z/N, F2[y]/y^r and Z_(p)", "bezout"};
  app.require_subcommand(1);
  Options o;
  std::string file;
  std::string format = "text";
  std::string unsafe;

  auto common = [&](CLI::App* sub) {
    sub->add_option("file", file, "problem file, - for standard input")->required();
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--trace", o.trace, "report pairs, reductions and levels on standard error");
    sub->add_flag("--no-pseudo-reduce", o.no_pseudo_reduce, "keep the Buchberger output as is");
    sub->add_flag("--valuation-division", o.valuation_division, "divide by the first dividing leading term");
    sub->add_option("--order", o.order, "variable priority, e.g. lex:X,Y");
  };
  CLI::App* gb = app.add_subcommand("gb", "Groebner basis and leading-term module");
  common(gb);
  CLI::App* red = app.add_subcommand("reduce", "division by the Groebner basis");
  red->add_option("target", o.target, "vector literal")->required();
  common(red);
  CLI::App* mem = app.add_subcommand("member", "membership test with certificate");
  mem->add_option("target", o.target, "vector literal")->required();
  common(mem);
  CLI::App* syz = app.add_subcommand("syz", "Schreyer syzygies of the Groebner basis");
  common(syz);
  CLI::App* res = app.add_subcommand("resolve", "iterated syzygies up to the stable tail");
  common(res);
  res->add_option("--max-levels", o.max_levels, "give up after this many levels");
  res->add_flag("--quotient", o.quotient, "resolve H/U instead of U");
  res->add_option("--unsafe-order", unsafe, "order override without a termination guarantee, e.g. lex:X,Y");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  if (gb->parsed()) o.command = Command::Gb;
  if (red->parsed()) o.command = Command::Reduce;
  if (mem->parsed()) o.command = Command::Member;
  if (syz->parsed()) o.command = Command::Syz;
  if (res->parsed()) o.command = Command::Resolve;
  o.format = format == "json" ? Format::Json : Format::Text;
  if (!unsafe.empty()) {
    if (!o.order.empty() && o.order != unsafe) {
      err << "usage error: --order and --unsafe-order disagree\n";
      return kUsage;
    }
    o.order = unsafe;
    o.unsafe_order = true;
  }

  std::string input;
  if (file == "-") {
    input.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(file);
    if (!in) {
      err << "usage error: cannot read " << file << "\n";
      return kUsage;
    }
    input.assign(std::istreambuf_iterator<char>(in), {});
  }

  TraceSink sink;
  if (o.trace) {
    sink = [&](const TraceEvent& ev) {
      bool level = ev.kind == "level";
      std::size_t i = level ? ev.i : ev.i + 1;
      std::size_t j = level ? ev.j : ev.j + 1;
      if (o.format == Format::Json) {
        json line{{"trace", ev.kind}, {"i", i}};
        if (ev.kind == "pair" || level) line["j"] = j;
        if (!ev.detail.empty()) line["detail"] = ev.detail;
        err << line.dump() << "\n";
      } else if (level) {
        err << "trace: level " << i << " has " << j << " elements\n";
      } else {
        err << "trace: " << ev.kind << " " << i;
        if (ev.kind == "pair") err << " " << j;
        if (!ev.detail.empty()) err << " " << ev.detail;
        err << "\n";
      }
    };
  }

  try {
    ProblemFile p = parse_problem(input);
    if (o.unsafe_order) err << "warning: order " << o.order << " is outside the termination guarantee\n";
    Document doc = run_command(o, p, sink);
    if (o.format == Format::Json) out << doc.json.dump() << "\n";
    else out << doc.text;
    if (doc.exit_code != kOk) err << "internal error: resolution failed verification\n";
    return doc.exit_code;
  } catch (const ParseError& e) {
    err << file << ":" << e.line() << ":" << e.column() << ": " << e.message() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResolutionIncomplete& e) {
    err << "internal error: " << e.what() << " (" << e.partial().levels.size() << " levels computed)\n";
    return kInternal;
  } catch (const GuardExhausted& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace bezout::cli
