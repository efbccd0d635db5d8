#pragma once

// Abstract syntax for the arithmetical language extended with the unary
// predicates T (truth) and D (determinateness).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cdwb {

using Natural = std::uint64_t;
using Code = std::uint64_t;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Zero, Succ, Plus, Times, Var, Numeral, Quote };

  Kind kind = Kind::Zero;
  TermPtr lhs;         // Succ, Plus, Times
  TermPtr rhs;         // Plus, Times
  std::string name;    // Var, Quote
  Natural value = 0;   // Numeral
};

TermPtr zero();
TermPtr succ(TermPtr t);
TermPtr plus(TermPtr a, TermPtr b);
TermPtr times(TermPtr a, TermPtr b);
TermPtr var(std::string name);
TermPtr quote(std::string name);

/// Canonical closed term denoting n. Never an S-chain; see to_string(..., true)
/// for the expanded reading.
TermPtr numeral(Natural n);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind { Eq, Tr, Det, Not, And, Or, Forall, Exists };

  Kind kind = Kind::Eq;
  TermPtr lhs;        // Eq, Tr, Det
  TermPtr rhs;        // Eq
  FormulaPtr left;    // Not, And, Or, Forall, Exists (body)
  FormulaPtr right;   // And, Or
  std::string var;    // Forall, Exists
};

FormulaPtr eq(TermPtr a, TermPtr b);
FormulaPtr tr(TermPtr t);
FormulaPtr det(TermPtr t);
FormulaPtr neg(FormulaPtr f);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(std::string v, FormulaPtr body);
FormulaPtr exists(std::string v, FormulaPtr body);

bool is_atomic(const Formula& f);
bool is_quantifier(const Formula& f);

bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Fully bracketed surface syntax, re-parseable by parse_formula. With
/// expand_numerals, #n prints as the n-fold S(...) of 0.
std::string to_string(const TermPtr& t, bool expand_numerals = false);
std::string to_string(const FormulaPtr& f, bool expand_numerals = false);

std::size_t size(const TermPtr& t);
std::size_t size(const FormulaPtr& f);

std::set<std::string> free_vars(const TermPtr& t);
std::set<std::string> free_vars(const FormulaPtr& f);
bool is_closed(const TermPtr& t);
bool is_sentence(const FormulaPtr& f);
bool has_quote(const FormulaPtr& f);

TermPtr substitute_numeral(const TermPtr& t, const std::string& v, Natural n);
/// Replaces the free occurrences of v by numeral(n). Numerals are closed, so no
/// capture can occur.
FormulaPtr substitute_numeral(const FormulaPtr& f, const std::string& v, Natural n);

using Assignment = std::map<std::string, Natural>;

/// phi[alpha]. Throws DomainError unless dom(alpha) == free_vars(phi).
FormulaPtr apply_assignment(const FormulaPtr& f, const Assignment& alpha);

/// Restriction of alpha to the free variables of f.
Assignment restrict_to(const Assignment& alpha, const FormulaPtr& f);

std::vector<FormulaPtr> direct_subformulas(const FormulaPtr& f);

/// De Morgan translation into the (~, |, exists) fragment:
/// (a & b) -> ~(~a* | ~b*), forall v a -> ~exists v ~a*.
FormulaPtr translate_star(const FormulaPtr& f);

/// Inverse of translate_star on its image: ~(~a | ~b) -> (a & b),
/// ~exists v ~a -> forall v a. Throws TranslationError on a conjunction or
/// universal quantifier, which can never occur in the image.
FormulaPtr translate_circ(const FormulaPtr& f);

/// Bidirectional interner between formulas and codes. Codes are consecutive
/// from 1 and never change once assigned.
class SentenceTable {
public:
  /// Returns the existing code or assigns the next fresh one. The formula must
  /// not contain unresolved quote(...) terms.
  Code intern(const FormulaPtr& f);
  std::optional<Code> find(const FormulaPtr& f) const;
  bool contains(Code c) const { return by_code_.count(c) != 0; }
  const FormulaPtr& decode(Code c) const;

  std::optional<Code> code_of(std::string_view name) const;
  const std::vector<std::pair<std::string, Code>>& declarations() const { return decls_; }

  std::size_t size() const { return by_code_.size(); }
  Code next_code() const { return next_; }

private:
  friend class Binder;

  Code reserve() { return next_++; }
  void bind(Code c, const FormulaPtr& f);

  std::unordered_map<std::string, Code> by_key_;
  std::map<Code, FormulaPtr> by_code_;
  std::map<std::string, Code, std::less<>> names_;
  std::vector<std::pair<std::string, Code>> decls_;
  Code next_ = 1;
};

struct Declaration {
  std::string name;
  Code code = 0;
  FormulaPtr formula;
};

/// Parses a seed file (one `name := formula` per line, '#' comments) and binds
/// names in two passes so that declarations may quote each other or themselves.
/// Throws ParseError or BindError. A self-quoting declaration whose resolved
/// sentence is already interned is a BindError unless reuse_existing is set, in
/// which case it takes the existing code and its reserved code stays unbound.
std::vector<Declaration> parse_source(std::string_view text, SentenceTable& table, bool reuse_existing = false);

/// Parses a single formula. quote(...) is rejected unless a table is given, in
/// which case names resolve against its existing declarations.
FormulaPtr parse_formula(std::string_view text, const SentenceTable* table = nullptr);
TermPtr parse_term(std::string_view text);

}  // namespace cdwb
