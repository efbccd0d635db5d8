#include "cdwb/error.hpp"
#include "cdwb/syntax.hpp"

#include <cctype>
#include <charconv>
#include <optional>

namespace cdwb {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Parser {
public:
  Parser(std::string_view text, std::size_t line, std::size_t column_base)
      : text_(text), line_(line), column_base_(column_base) {}

  FormulaPtr formula() {
    skip_ws();
    if (eat('~')) return neg(formula());
    if (keyword("forall")) return quantifier(true);
    if (keyword("exists")) return quantifier(false);
    if (constructor("T(")) {
      auto t = term();
      expect(')');
      return tr(std::move(t));
    }
    if (constructor("D(")) {
      auto t = term();
      expect(')');
      return det(std::move(t));
    }
    if (peek() == '(') {
      std::size_t save = pos_;
      try {
        auto lhs = term();
        skip_ws();
        if (eat('=')) return eq(std::move(lhs), term());
      } catch (const ParseError&) {
      }
      pos_ = save;
      expect('(');
      auto a = formula();
      skip_ws();
      bool is_and;
      if (eat('&')) {
        is_and = true;
      } else if (eat('|')) {
        is_and = false;
      } else {
        fail("expected '&' or '|'");
      }
      auto b = formula();
      expect(')');
      return is_and ? conj(std::move(a), std::move(b)) : disj(std::move(a), std::move(b));
    }
    auto lhs = term();
    expect('=');
    return eq(std::move(lhs), term());
  }

  TermPtr term() {
    skip_ws();
    char c = peek();
    if (c == '0') {
      ++pos_;
      return zero();
    }
    if (c == '#') {
      ++pos_;
      return numeral(natural());
    }
    if (constructor("S(")) {
      auto t = term();
      expect(')');
      return succ(std::move(t));
    }
    if (constructor("quote(")) {
      skip_ws();
      auto name = identifier();
      expect(')');
      return quote(std::move(name));
    }
    if (c == '(') {
      ++pos_;
      auto a = term();
      skip_ws();
      bool is_plus;
      if (eat('+')) {
        is_plus = true;
      } else if (eat('*')) {
        is_plus = false;
      } else {
        fail("expected '+' or '*'");
      }
      auto b = term();
      expect(')');
      return is_plus ? plus(std::move(a), std::move(b)) : times(std::move(a), std::move(b));
    }
    if (ident_start(c)) {
      auto name = identifier();
      if (name == "forall" || name == "exists" || name == "quote") fail("reserved word '" + name + "'");
      return var(std::move(name));
    }
    fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'");
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_base_ + pos_ + 1);
  }

private:
  FormulaPtr quantifier(bool universal) {
    skip_ws();
    auto v = identifier();
    expect('.');
    auto body = formula();
    return universal ? forall(std::move(v), std::move(body)) : exists(std::move(v), std::move(body));
  }

  std::string identifier() {
    if (!ident_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Natural natural() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits after '#'");
    Natural n = 0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, n);
    if (ec != std::errc{}) {
      pos_ = start;
      fail("numeral out of range");
    }
    return n;
  }

  bool keyword(std::string_view kw) {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t after = pos_ + kw.size();
    if (after < text_.size() && ident_char(text_[after])) return false;
    pos_ = after;
    return true;
  }

  bool constructor(std::string_view head) {
    if (text_.substr(pos_, head.size()) != head) return false;
    pos_ += head.size();
    return true;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool eat(char c) {
    skip_ws();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_base_;
};

TermPtr resolve(const TermPtr& t, const SentenceTable& table,
                const std::map<std::string, Code>& local) {
  if (!t) return t;
  if (t->kind == Term::Kind::Quote) {
    if (auto it = local.find(t->name); it != local.end()) return numeral(it->second);
    if (auto c = table.code_of(t->name)) return numeral(*c);
    throw BindError("unbound name '" + t->name + "'");
  }
  if (!t->lhs) return t;
  auto l = resolve(t->lhs, table, local);
  auto r = resolve(t->rhs, table, local);
  if (t->kind == Term::Kind::Succ) return succ(l);
  return t->kind == Term::Kind::Plus ? plus(l, r) : times(l, r);
}

FormulaPtr resolve(const FormulaPtr& f, const SentenceTable& table,
                   const std::map<std::string, Code>& local) {
  switch (f->kind) {
    case Formula::Kind::Eq:
      return eq(resolve(f->lhs, table, local), resolve(f->rhs, table, local));
    case Formula::Kind::Tr:
      return tr(resolve(f->lhs, table, local));
    case Formula::Kind::Det:
      return det(resolve(f->lhs, table, local));
    case Formula::Kind::Not:
      return neg(resolve(f->left, table, local));
    case Formula::Kind::And:
      return conj(resolve(f->left, table, local), resolve(f->right, table, local));
    case Formula::Kind::Or:
      return disj(resolve(f->left, table, local), resolve(f->right, table, local));
    case Formula::Kind::Forall:
      return forall(f->var, resolve(f->left, table, local));
    case Formula::Kind::Exists:
      return exists(f->var, resolve(f->left, table, local));
  }
  return f;
}

}  // namespace

class Binder {
public:
  Binder(SentenceTable& table, bool reuse_existing) : table_(table), reuse_existing_(reuse_existing) {}

  struct Raw {
    std::string name;
    FormulaPtr formula;
    std::size_t line;
  };

  std::vector<Declaration> bind(const std::vector<Raw>& raws) {
    std::map<std::string, Code> local;
    std::map<std::string, std::size_t> seen;
    for (const auto& r : raws) {
      if (seen.count(r.name) || table_.code_of(r.name))
        throw BindError("line " + std::to_string(r.line) + ": duplicate name '" + r.name + "'");
      seen.emplace(r.name, r.line);
    }

    std::vector<Declaration> out(raws.size());
    // Quote-free declarations first: they intern (and deduplicate) normally.
    for (std::size_t i = 0; i < raws.size(); ++i) {
      if (has_quote(raws[i].formula)) continue;
      out[i] = {raws[i].name, table_.intern(raws[i].formula), raws[i].formula};
      local.emplace(raws[i].name, out[i].code);
    }
    for (std::size_t i = 0; i < raws.size(); ++i) {
      if (!has_quote(raws[i].formula)) continue;
      out[i].name = raws[i].name;
      out[i].code = table_.reserve();
      local.emplace(raws[i].name, out[i].code);
    }
    for (std::size_t i = 0; i < raws.size(); ++i) {
      if (!has_quote(raws[i].formula)) continue;
      FormulaPtr resolved;
      try {
        resolved = resolve(raws[i].formula, table_, local);
      } catch (const BindError& e) {
        throw BindError("line " + std::to_string(raws[i].line) + ": " + e.what());
      }
      auto existing = table_.find(resolved);
      if (existing && reuse_existing_) {
        out[i].code = *existing;
        out[i].formula = resolved;
        continue;
      }
      if (existing)
        throw BindError("line " + std::to_string(raws[i].line) + ": '" + raws[i].name +
                        "' resolves to the already interned sentence with code " +
                        std::to_string(*existing));
      table_.bind(out[i].code, resolved);
      out[i].formula = resolved;
    }
    for (const auto& d : out) {
      table_.names_.emplace(d.name, d.code);
      table_.decls_.emplace_back(d.name, d.code);
    }
    return out;
  }

private:
  SentenceTable& table_;
  bool reuse_existing_;
};

std::vector<Declaration> parse_source(std::string_view text, SentenceTable& table, bool reuse_existing) {
  std::vector<Binder::Raw> raws;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    if (auto hash = line.find("# "); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);

    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    if (lead < line.size() && line[lead] != '#') {
      auto assign = line.find(":=");
      if (assign == std::string_view::npos) throw ParseError("expected ':='", line_no, lead + 1);
      std::string_view name = line.substr(lead, assign - lead);
      while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.remove_suffix(1);
      bool valid = !name.empty() && ident_start(name.front());
      for (char c : name) valid = valid && ident_char(c);
      if (!valid) throw ParseError("invalid declaration name", line_no, lead + 1);
      Parser p(line.substr(assign + 2), line_no, assign + 2);
      auto f = p.formula();
      p.finish();
      raws.push_back({std::string(name), std::move(f), line_no});
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return Binder(table, reuse_existing).bind(raws);
}

FormulaPtr parse_formula(std::string_view text, const SentenceTable* table) {
  Parser p(text, 1, 0);
  auto f = p.formula();
  p.finish();
  if (has_quote(f)) {
    if (!table) throw BindError("quote(...) needs a sentence table");
    f = resolve(f, *table, {});
  }
  return f;
}

TermPtr parse_term(std::string_view text) {
  Parser p(text, 1, 0);
  auto t = p.term();
  p.finish();
  return t;
}

}  // namespace cdwb
