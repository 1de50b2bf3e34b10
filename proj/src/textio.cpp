//
// Copyright 2026 The obdax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "textio.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"

namespace obdax {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Yes:
      return "yes";
    case Outcome::No:
      return "no";
    case Outcome::Unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

enum class Tok {
  Ident, Int, LBrace, RBrace, LParen, RParen, Comma, Semi, Dot, Slash,
  Amp, Minus, Arrow, Sub, Rule, Eq, End
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Semi: return "';'";
    case Tok::Dot: return "'.'";
    case Tok::Slash: return "'/'";
    case Tok::Amp: return "'&'";
    case Tok::Minus: return "'-'";
    case Tok::Arrow: return "'->'";
    case Tok::Sub: return "'[='";
    case Tok::Rule: return "':-'";
    case Tok::Eq: return "'='";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourceLocation loc;
};

[[noreturn]] void fail(const SourceLocation& loc, const std::string& msg) {
  Diagnostic d;
  d.code = "syntax";
  d.message = msg;
  d.location = loc;
  throw Error(Error::Kind::Parse, d.str(), {d});
}

// Length of a well-formed UTF-8 sequence starting at s[i], or 0.
std::size_t utf8_length(std::string_view s, std::size_t i) {
  const auto b = static_cast<unsigned char>(s[i]);
  std::size_t n = 0;
  if (b < 0x80) return 1;
  if ((b & 0xE0) == 0xC0 && b >= 0xC2) n = 2;
  else if ((b & 0xF0) == 0xE0) n = 3;
  else if ((b & 0xF8) == 0xF0 && b <= 0xF4) n = 4;
  else return 0;
  if (i + n > s.size()) return 0;
  for (std::size_t k = 1; k < n; ++k)
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  return n;
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    i += n;
    col += 1;
  };
  while (i < s.size()) {
    const char c = s[i];
    const SourceLocation loc{line, col};
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') {
        std::size_t n = utf8_length(s, i);
        if (n == 0) fail({line, col}, "invalid UTF-8 byte");
        advance(n);
      }
      continue;
    }
    if (static_cast<unsigned char>(c) >= 0x80) {
      if (utf8_length(s, i) == 0) fail(loc, "invalid UTF-8 byte");
      fail(loc, "unexpected non-ASCII character");
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), loc});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Int, std::string(s.substr(i, j - i)), loc});
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
    Tok t;
    std::size_t len = 1;
    if (two('-', '>')) {
      t = Tok::Arrow;
      len = 2;
    } else if (two('[', '=')) {
      t = Tok::Sub;
      len = 2;
    } else if (two(':', '-')) {
      t = Tok::Rule;
      len = 2;
    } else {
      switch (c) {
        case '{': t = Tok::LBrace; break;
        case '}': t = Tok::RBrace; break;
        case '(': t = Tok::LParen; break;
        case ')': t = Tok::RParen; break;
        case ',': t = Tok::Comma; break;
        case ';': t = Tok::Semi; break;
        case '.': t = Tok::Dot; break;
        case '/': t = Tok::Slash; break;
        case '&': t = Tok::Amp; break;
        case '-': t = Tok::Minus; break;
        case '=': t = Tok::Eq; break;
        default:
          fail(loc, std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back({t, std::string(s.substr(i, len)), loc});
    i += len;
    col += static_cast<int>(len);
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// Ontology expression before symbols are classified as concepts or roles.
struct RawExpr {
  enum class Kind { Top, Bot, Ident, And, Exists } kind = Kind::Top;
  Name name;
  bool inverse = false;
  std::vector<RawExpr> ops;
  SourceLocation loc;
};

struct RawAxiom {
  RawExpr lhs, rhs;
  SourceLocation loc;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok t) const { return peek().kind == t; }
  bool at_keyword(const char* kw) const { return at(Tok::Ident) && peek().text == kw; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok t) {
    if (!at(t)) return false;
    take();
    return true;
  }
  Token expect(Tok t) {
    if (!at(t)) {
      fail(peek().loc, std::string("expected ") + tok_name(t) + ", found " +
                           (at(Tok::End) ? std::string("end of input") : "'" + peek().text + "'"));
    }
    return take();
  }
  [[noreturn]] void unexpected(const std::string& expected) {
    fail(peek().loc, "expected " + expected + ", found " +
                         (at(Tok::End) ? std::string("end of input") : "'" + peek().text + "'"));
  }

  Atom atom() {
    Atom a;
    a.relation = expect(Tok::Ident).text;
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      a.args.push_back(expect(Tok::Ident).text);
      while (accept(Tok::Comma)) a.args.push_back(expect(Tok::Ident).text);
    }
    expect(Tok::RParen);
    return a;
  }

  RawExpr expr() {
    RawExpr first = term();
    if (!at(Tok::Amp)) return first;
    RawExpr e;
    e.kind = RawExpr::Kind::And;
    e.loc = first.loc;
    e.ops.push_back(std::move(first));
    while (accept(Tok::Amp)) e.ops.push_back(term());
    return e;
  }

  RawExpr term() {
    RawExpr e;
    e.loc = peek().loc;
    if (accept(Tok::LParen)) {
      RawExpr inner = expr();
      expect(Tok::RParen);
      return inner;
    }
    if (at_keyword("top")) {
      take();
      e.kind = RawExpr::Kind::Top;
      return e;
    }
    if (at_keyword("bot")) {
      take();
      e.kind = RawExpr::Kind::Bot;
      return e;
    }
    if (at_keyword("exists")) {
      take();
      e.kind = RawExpr::Kind::Exists;
      e.name = expect(Tok::Ident).text;
      e.inverse = accept(Tok::Minus);
      if (accept(Tok::Dot)) {
        e.ops.push_back(term());
      } else {
        // DL-Lite basic concept: exists r abbreviates exists r.top.
        RawExpr top;
        top.kind = RawExpr::Kind::Top;
        top.loc = e.loc;
        e.ops.push_back(top);
      }
      return e;
    }
    if (!at(Tok::Ident)) unexpected("concept or role");
    e.kind = RawExpr::Kind::Ident;
    e.name = take().text;
    e.inverse = accept(Tok::Minus);
    return e;
  }

  std::size_t pos_ = 0;

 private:
  std::vector<Token> toks_;
};

Dialect parse_dialect(Parser& p) {
  const Token t = p.expect(Tok::Ident);
  std::string s = t.text;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "dllite" || s == "dlliterhorn" || s == "dllite_horn") return Dialect::DLLiteRHorn;
  if (s == "el") return Dialect::EL;
  if (s == "elhi") return Dialect::ELHI;
  fail(t.loc, "unknown dialect '" + t.text + "' (expected dllite, el or elhi)");
}

void collect_exists_roles(const RawExpr& e, std::set<Name>& roles, std::set<Name>& concepts,
                          bool concept_position) {
  switch (e.kind) {
    case RawExpr::Kind::Exists:
      roles.insert(e.name);
      for (const auto& op : e.ops) collect_exists_roles(op, roles, concepts, true);
      break;
    case RawExpr::Kind::And: {
      bool mixed = std::any_of(e.ops.begin(), e.ops.end(),
                               [](const RawExpr& o) { return o.kind != RawExpr::Kind::Ident; });
      for (const auto& op : e.ops) collect_exists_roles(op, roles, concepts, concept_position || mixed);
      break;
    }
    case RawExpr::Kind::Ident:
      if (e.inverse) roles.insert(e.name);
      else if (concept_position) concepts.insert(e.name);
      break;
    default:
      break;
  }
}

bool all_idents(const RawExpr& e) {
  if (e.kind == RawExpr::Kind::Ident) return true;
  if (e.kind != RawExpr::Kind::And) return false;
  return std::all_of(e.ops.begin(), e.ops.end(),
                     [](const RawExpr& o) { return o.kind == RawExpr::Kind::Ident; });
}

std::vector<const RawExpr*> idents_of(const RawExpr& e) {
  std::vector<const RawExpr*> out;
  if (e.kind == RawExpr::Kind::Ident) out.push_back(&e);
  else
    for (const auto& o : e.ops) out.push_back(&o);
  return out;
}

Concept to_concept(const RawExpr& e) {
  switch (e.kind) {
    case RawExpr::Kind::Top:
      return Concept::top();
    case RawExpr::Kind::Bot:
      return Concept::bottom();
    case RawExpr::Kind::Ident:
      if (e.inverse) fail(e.loc, "inverse marker on concept name " + e.name);
      return Concept::named(e.name);
    case RawExpr::Kind::And: {
      std::vector<Concept> cs;
      for (const auto& o : e.ops) cs.push_back(to_concept(o));
      return Concept::conj(std::move(cs));
    }
    case RawExpr::Kind::Exists:
      return Concept::exists(Role{e.name, e.inverse}, to_concept(e.ops[0]));
  }
  return Concept::top();
}

void attach_locations(std::vector<Diagnostic>& diags, const std::map<std::string, SourceLocation>& locs) {
  for (auto& d : diags) {
    auto it = locs.find(d.where);
    if (it != locs.end()) d.location = it->second;
  }
}

[[noreturn]] void fail_validation(std::vector<Diagnostic> diags) {
  std::string msg;
  for (const auto& d : diags) msg += (msg.empty() ? "" : "\n") + d.str();
  throw Error(Error::Kind::Validation, msg, std::move(diags));
}

}  // namespace

ObdaSpec parse_spec(std::string_view text) {
  Parser p(text);
  ObdaSpec spec;
  std::set<Name> declared_roles;
  std::vector<RawAxiom> axioms;
  std::map<std::string, SourceLocation> locs;
  bool have_ontology = false;

  while (!p.at(Tok::End)) {
    if (p.at_keyword("schema")) {
      p.take();
      p.expect(Tok::LBrace);
      while (!p.accept(Tok::RBrace)) {
        const Token name = p.expect(Tok::Ident);
        p.expect(Tok::Slash);
        const Token k = p.expect(Tok::Int);
        if (!spec.source_schema.add(name.text, std::stoul(k.text)))
          fail(name.loc, "relation " + name.text + " declared twice with different arities");
        p.accept(Tok::Comma) || p.accept(Tok::Semi);
      }
    } else if (p.at_keyword("roles")) {
      p.take();
      p.expect(Tok::LBrace);
      while (!p.accept(Tok::RBrace)) {
        declared_roles.insert(p.expect(Tok::Ident).text);
        p.accept(Tok::Comma) || p.accept(Tok::Semi);
      }
    } else if (p.at_keyword("mappings")) {
      p.take();
      p.expect(Tok::LBrace);
      while (!p.accept(Tok::RBrace)) {
        const SourceLocation loc = p.peek().loc;
        GavMapping m;
        m.body.push_back(p.atom());
        while (p.accept(Tok::Comma)) m.body.push_back(p.atom());
        p.expect(Tok::Arrow);
        m.head = p.atom();
        if (!p.accept(Tok::Semi) && !p.at(Tok::RBrace)) p.unexpected("';' or '}'");
        spec.mappings.push_back(std::move(m));
        locs["mapping " + std::to_string(spec.mappings.size())] = loc;
      }
    } else if (p.at_keyword("ontology")) {
      const Token kw = p.take();
      if (have_ontology) fail(kw.loc, "duplicate ontology block");
      have_ontology = true;
      spec.ontology.dialect = parse_dialect(p);
      p.expect(Tok::LBrace);
      while (!p.accept(Tok::RBrace)) {
        RawAxiom ax;
        ax.loc = p.peek().loc;
        ax.lhs = p.expr();
        p.expect(Tok::Sub);
        ax.rhs = p.expr();
        if (!p.accept(Tok::Semi) && !p.at(Tok::RBrace)) p.unexpected("';' or '}'");
        axioms.push_back(std::move(ax));
      }
    } else {
      p.unexpected("'schema', 'roles', 'mappings' or 'ontology'");
    }
  }

  // Classify ontology symbols. Roles are known from declarations, binary
  // mapping heads, existential restrictions and inverse markers; an axiom
  // between plain identifiers is a role axiom iff it mentions a known role.
  std::set<Name> roles = declared_roles, concepts;
  for (const auto& m : spec.mappings) {
    if (m.head.args.size() == 2) roles.insert(m.head.relation);
    if (m.head.args.size() == 1) concepts.insert(m.head.relation);
  }
  for (const auto& ax : axioms) {
    bool plain = all_idents(ax.lhs) && (all_idents(ax.rhs) || ax.rhs.kind == RawExpr::Kind::Bot);
    collect_exists_roles(ax.lhs, roles, concepts, !plain);
    collect_exists_roles(ax.rhs, roles, concepts, !plain);
  }
  std::vector<bool> is_role_axiom(axioms.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < axioms.size(); ++i) {
      const auto& ax = axioms[i];
      if (is_role_axiom[i]) continue;
      const bool disj = ax.rhs.kind == RawExpr::Kind::Bot && all_idents(ax.lhs);
      const bool incl = ax.lhs.kind == RawExpr::Kind::Ident && ax.rhs.kind == RawExpr::Kind::Ident;
      if (!disj && !incl) continue;
      std::vector<const RawExpr*> ids = idents_of(ax.lhs);
      if (incl) ids.push_back(&ax.rhs);
      const bool any_role = std::any_of(ids.begin(), ids.end(), [&](const RawExpr* e) { return roles.count(e->name) > 0; });
      if (!any_role) continue;
      is_role_axiom[i] = true;
      changed = true;
      for (const auto* e : ids) roles.insert(e->name);
    }
  }
  for (std::size_t i = 0; i < axioms.size(); ++i) {
    const auto& ax = axioms[i];
    locs["axiom " + std::to_string(i + 1)] = ax.loc;
    if (!is_role_axiom[i]) {
      spec.ontology.concept_inclusions.push_back({to_concept(ax.lhs), to_concept(ax.rhs)});
      continue;
    }
    if (ax.rhs.kind == RawExpr::Kind::Bot) {
      RoleDisjointness rd;
      for (const auto* e : idents_of(ax.lhs)) {
        if (e->inverse) fail(e->loc, "inverse role in role disjointness");
        rd.roles.push_back(e->name);
      }
      spec.ontology.role_disjointness.push_back(std::move(rd));
    } else {
      spec.ontology.role_inclusions.push_back(
          {Role{ax.lhs.name, ax.lhs.inverse}, Role{ax.rhs.name, ax.rhs.inverse}});
    }
  }
  // Axiom diagnostics from validate_ontology index concept inclusions only;
  // map them back to their source positions.
  {
    std::map<std::string, SourceLocation> ci_locs = locs;
    std::size_t ci = 0;
    for (std::size_t i = 0; i < axioms.size(); ++i)
      if (!is_role_axiom[i]) ci_locs["axiom " + std::to_string(++ci)] = axioms[i].loc;
    auto diags = validate_spec(spec);
    attach_locations(diags, ci_locs);
    if (!diags.empty()) fail_validation(std::move(diags));
  }
  return spec;
}

namespace {

UCQ parse_rules(std::string_view text, const Schema* schema) {
  Parser p(text);
  UCQ u;
  std::string head_name;
  bool first = true;
  std::map<std::string, SourceLocation> locs;
  while (!p.at(Tok::End)) {
    const Token head = p.expect(Tok::Ident);
    CQ q;
    p.expect(Tok::LParen);
    if (!p.at(Tok::RParen)) {
      q.answer_vars.push_back(p.expect(Tok::Ident).text);
      while (p.accept(Tok::Comma)) q.answer_vars.push_back(p.expect(Tok::Ident).text);
    }
    p.expect(Tok::RParen);
    if (first) {
      head_name = head.text;
      u.arity = q.answer_vars.size();
      first = false;
    } else if (head.text != head_name) {
      fail(head.loc, "rule head " + head.text + " differs from " + head_name);
    } else if (q.answer_vars.size() != u.arity) {
      fail(head.loc, "disjuncts with differing head arity");
    }
    std::set<Name> used;
    if (p.accept(Tok::Rule)) {
      do {
        const SourceLocation loc = p.peek().loc;
        if (p.peek(1).kind == Tok::Eq) {
          Equality e;
          e.left = p.expect(Tok::Ident).text;
          p.expect(Tok::Eq);
          e.right = p.expect(Tok::Ident).text;
          used.insert(e.left);
          used.insert(e.right);
          q.equalities.insert(e);
        } else {
          Atom a = p.atom();
          if (schema) {
            auto k = schema->arity(a.relation);
            if (!k) fail(loc, "undeclared relation " + a.relation);
            if (*k != a.args.size())
              fail(loc, "arity mismatch for " + a.relation + ": expected " + std::to_string(*k) +
                            ", got " + std::to_string(a.args.size()));
          }
          used.insert(a.args.begin(), a.args.end());
          q.atoms.insert(std::move(a));
        }
      } while (p.accept(Tok::Comma));
    }
    p.expect(Tok::Dot);
    std::set<Name> ans(q.answer_vars.begin(), q.answer_vars.end());
    if (ans.size() != q.answer_vars.size()) fail(head.loc, "repeated answer variable");
    for (const auto& v : used)
      if (!ans.count(v)) q.quantified_vars.insert(v);
    locs["disjunct " + std::to_string(u.disjuncts.size() + 1)] = head.loc;
    u.disjuncts.push_back(std::move(q));
  }
  if (u.disjuncts.empty()) fail(p.peek().loc, "expected at least one rule");
  return u;
}

}  // namespace

UCQ parse_query(std::string_view text, const Schema& schema) { return parse_rules(text, &schema); }

UCQ parse_query_unchecked(std::string_view text) { return parse_rules(text, nullptr); }

Database parse_database(std::string_view text) {
  Parser p(text);
  Database d;
  std::map<Name, std::size_t> arities;
  while (!p.at(Tok::End)) {
    if (!p.at_keyword("facts")) p.unexpected("'facts'");
    p.take();
    p.expect(Tok::LBrace);
    while (!p.accept(Tok::RBrace)) {
      const SourceLocation loc = p.peek().loc;
      Fact f = p.atom();
      auto [it, inserted] = arities.emplace(f.relation, f.args.size());
      if (!inserted && it->second != f.args.size())
        fail(loc, "relation " + f.relation + " used with two arities");
      d.facts.insert(std::move(f));
      p.accept(Tok::Comma) || p.accept(Tok::Semi) || p.accept(Tok::Dot);
    }
  }
  return d;
}

namespace {

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string render_role(const Role& r) { return r.name + (r.inverse ? "-" : ""); }

std::string render_atom(const Atom& a) { return a.relation + "(" + join(a.args, ",") + ")"; }

std::string render_concept(const Concept& c, bool in_filler) {
  switch (c.kind) {
    case Concept::Kind::Top:
      return "top";
    case Concept::Kind::Bottom:
      return "bot";
    case Concept::Kind::Name:
      return c.name;
    case Concept::Kind::Exists:
      return "exists " + render_role(c.role) + "." + render_concept(c.operands[0], true);
    case Concept::Kind::And: {
      std::vector<std::string> parts;
      for (const auto& op : c.operands) parts.push_back(render_concept(op, true));
      std::string s = join(parts, " & ");
      return in_filler ? "(" + s + ")" : s;
    }
  }
  return "top";
}

}  // namespace

std::string render_fact(const Fact& f) { return render_atom(f); }

std::string render(const Concept& c) { return render_concept(c, false); }

std::string render(const ObdaSpec& spec) {
  std::ostringstream os;
  os << "schema {\n";
  for (const auto& [n, k] : spec.source_schema.relations()) os << "  " << n << "/" << k << "\n";
  os << "}\n";

  std::set<Name> heads2;
  for (const auto& m : spec.mappings)
    if (m.head.args.size() == 2) heads2.insert(m.head.relation);
  std::vector<std::string> extra_roles;
  for (const auto& r : spec.ontology.role_names())
    if (!heads2.count(r)) extra_roles.push_back(r);
  if (!extra_roles.empty()) os << "roles { " << join(extra_roles, " ") << " }\n";

  std::vector<std::pair<std::string, std::string>> ms;
  for (const auto& m : spec.mappings) {
    std::vector<std::string> body;
    for (const auto& a : m.body) body.push_back(render_atom(a));
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    ms.emplace_back(render_atom(m.head), join(body, ", "));
  }
  std::sort(ms.begin(), ms.end());
  os << "mappings {\n";
  for (const auto& [h, b] : ms) os << "  " << b << " -> " << h << " ;\n";
  os << "}\n";

  std::vector<std::string> axioms;
  for (const auto& ci : spec.ontology.concept_inclusions)
    axioms.push_back(render_concept(ci.lhs, false) + " [= " + render_concept(ci.rhs, false));
  for (const auto& ri : spec.ontology.role_inclusions)
    axioms.push_back(render_role(ri.lhs) + " [= " + render_role(ri.rhs));
  for (const auto& rd : spec.ontology.role_disjointness)
    axioms.push_back(join(rd.roles, " & ") + " [= bot");
  std::sort(axioms.begin(), axioms.end());
  os << "ontology " << dialect_name(spec.ontology.dialect) << " {\n";
  for (const auto& a : axioms) os << "  " << a << " ;\n";
  os << "}\n";
  return os.str();
}

std::string render(const CQ& q, const std::string& head) {
  std::vector<std::string> body;
  for (const auto& a : q.atoms) body.push_back(render_atom(a));
  for (const auto& e : q.equalities) body.push_back(e.left + " = " + e.right);
  std::string s = head + "(" + join(q.answer_vars, ",") + ")";
  if (!body.empty()) s += " :- " + join(body, ", ");
  return s + ".";
}

std::string render(const UCQ& q, const std::string& head) {
  std::string out;
  for (const auto& d : q.disjuncts) out += render(d, head) + "\n";
  return out;
}

std::string render(const Database& d) {
  std::string out = "facts {\n";
  for (const auto& f : d.facts) out += "  " + render_atom(f) + "\n";
  return out + "}\n";
}

namespace {

nlohmann::json tuples_json(const std::vector<Tuple>& ts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& t : ts) arr.push_back(t);
  return arr;
}

std::string tuple_text(const Tuple& t) { return "(" + join(t, ",") + ")"; }

std::string tuples_text(const std::vector<Tuple>& ts) {
  std::vector<std::string> parts;
  for (const auto& t : ts) parts.push_back(tuple_text(t));
  return "{" + join(parts, ", ") + "}";
}

}  // namespace

std::string render_json(const Verdict& v) {
  nlohmann::ordered_json j;
  j["verdict"] = outcome_name(v.outcome);
  if (v.realization) j["realization"] = render(*v.realization);
  if (v.witness) {
    nlohmann::ordered_json w;
    nlohmann::json facts = nlohmann::json::array();
    for (const auto& f : v.witness->database.facts) facts.push_back(render_atom(f));
    w["database"] = facts;
    w["tuple"] = v.witness->tuple;
    w["source_answers"] = tuples_json(v.witness->source_answers);
    w["certain_answers"] = tuples_json(v.witness->certain_answers);
    j["witness"] = w;
  }
  if (v.bounds) {
    const auto& b = *v.bounds;
    nlohmann::ordered_json o;
    o["strategy"] = b.strategy;
    o["dialect"] = b.dialect;
    o["rooted"] = b.rooted;
    o["exhaustive"] = b.exhaustive;
    o["consistent_only"] = b.consistent_only;
    o["frontier_depth"] = b.frontier_depth;
    o["depth_reached"] = b.depth_reached;
    o["max_abox"] = b.max_abox;
    o["candidates"] = b.candidates;
    o["choices"] = b.choices;
    if (!b.reason.empty()) o["reason"] = b.reason;
    j["bounds"] = o;
  }
  return j.dump(2) + "\n";
}

std::string render_text(const Verdict& v) {
  std::ostringstream os;
  os << "verdict: " << outcome_name(v.outcome) << "\n";
  if (v.realization) os << "realization:\n" << render(*v.realization);
  if (v.witness) {
    const auto& w = *v.witness;
    os << "witness database:\n" << render(w.database);
    os << "witness tuple: " << tuple_text(w.tuple) << "\n";
    os << "source answers: " << tuples_text(w.source_answers) << "\n";
    os << "certain answers: " << tuples_text(w.certain_answers) << "\n";
  }
  if (v.bounds) {
    const auto& b = *v.bounds;
    os << "bounds: strategy=" << b.strategy << " dialect=" << b.dialect
       << " rooted=" << (b.rooted ? "true" : "false")
       << " exhaustive=" << (b.exhaustive ? "true" : "false")
       << " frontier_depth=" << b.frontier_depth << " depth_reached=" << b.depth_reached
       << " max_abox=" << b.max_abox << " candidates=" << b.candidates
       << " choices=" << b.choices << "\n";
    if (!b.reason.empty()) os << "reason: " << b.reason << "\n";
  }
  return os.str();
}

}  // namespace obdax
