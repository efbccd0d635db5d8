#pragma once

// Shared fixtures for the test binaries: pipeline runs and random generators
// for seed files, gamma files and (formula, assignment) pairs.

#include "cdwb/checker.hpp"
#include "cdwb/error.hpp"
#include "cdwb/similarity.hpp"

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <regex>
#include <string>
#include <vector>

namespace cdwb::testing {

/// CDWB_SEED when set, otherwise a fixed default.
inline std::uint64_t test_seed() {
  if (const char* s = std::getenv("CDWB_SEED")) {
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    if (end && *end == '\0') return v;
  }
  return 20240611;
}

struct Pipeline {
  SentenceTable table;
  std::vector<Code> seeds;
  Universe U;
  StageTrace trace;
  TruthTable tf;
};

inline Pipeline run_pipeline(const std::string& text, Natural witness_max, Caps caps = {},
                             std::size_t max_stages = 0) {
  Pipeline p;
  for (const auto& d : parse_source(text, p.table)) p.seeds.push_back(d.code);
  p.U = build_universe(p.table, p.seeds, witness_max, caps);
  p.trace = run_stages(p.U, max_stages ? max_stages : p.U.size() + 2);
  p.tf = t_final_table(p.trace.D_omega, p.trace.T_omega, p.U);
  return p;
}

class Generator {
public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  /// Seed file text: a few declarations that may quote each other or
  /// themselves, plus `copies` declarations that repeat one template with
  /// different equal-valued closed terms.
  std::string seed_text(std::size_t base, std::size_t copies, const std::string& prefix = "s",
                        const std::vector<std::string>& extra_names = {}) {
    std::vector<std::string> names = extra_names;
    for (std::size_t i = 0; i < base; ++i) names.push_back(prefix + std::to_string(i));
    for (std::size_t c = 0; c < copies; ++c) names.push_back(prefix + std::to_string(base) + "v" + std::to_string(c));
    std::string out;
    for (std::size_t i = 0; i < base; ++i) {
      std::uint64_t shape = rng_();
      std::mt19937_64 terms(rng_());
      out += prefix + std::to_string(i) + " := " + formula(shape, terms, names) + "\n";
    }
    if (copies) {
      std::uint64_t shape = rng_();
      for (std::size_t c = 0; c < copies; ++c) {
        std::mt19937_64 terms(rng_());
        out += prefix + std::to_string(base) + "v" + std::to_string(c) + " := " +
               formula(shape, terms, names, true) + "\n";
      }
    }
    return out;
  }

  /// A random formula in the seed grammar. Structure and term values come from
  /// shape, the spelling of closed terms from terms, so one shape with different
  /// term streams yields similar formulas.
  std::string formula(std::uint64_t shape, std::mt19937_64& terms, const std::vector<std::string>& names,
                      bool closed_heavy = false) {
    std::mt19937_64 s(shape);
    std::vector<std::string> bound;
    return formula_at(s, terms, names, bound, closed_heavy ? 2 : 3, closed_heavy);
  }

  /// Value drawn from values, spelling from variants.
  static std::string closed_term(std::mt19937_64& values, std::mt19937_64& terms, Value max_value = 3) {
    Value v = std::uniform_int_distribution<Value>(0, max_value)(values);
    auto variants = term_variants(v, 7);
    return to_string(variants[std::uniform_int_distribution<std::size_t>(0, variants.size() - 1)(terms)]);
  }

private:
  static bool flip(std::mt19937_64& r, double p) { return std::bernoulli_distribution(p)(r); }
  static std::size_t pick(std::mt19937_64& r, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(r);
  }

  std::string term(std::mt19937_64& s, std::mt19937_64& terms, const std::vector<std::string>& bound) {
    if (!bound.empty() && flip(s, 0.6)) {
      const auto& v = bound[pick(s, bound.size())];
      switch (pick(s, 3)) {
        case 0:
          return v;
        case 1:
          return "S(" + v + ")";
        default:
          return "(" + v + "+" + closed_term(s, terms, 2) + ")";
      }
    }
    return closed_term(s, terms);
  }

  std::string atom(std::mt19937_64& s, std::mt19937_64& terms, const std::vector<std::string>& names,
                   const std::vector<std::string>& bound, bool closed_heavy) {
    std::size_t k = pick(s, closed_heavy ? 2 : 5);
    if (k == 0 || names.empty()) return term(s, terms, bound) + "=" + term(s, terms, bound);
    std::string pred = flip(s, 0.5) ? "T(" : "D(";
    if (k == 1) return pred + term(s, terms, bound) + ")";
    return pred + "quote(" + names[pick(s, names.size())] + "))";
  }

  std::string formula_at(std::mt19937_64& s, std::mt19937_64& terms, const std::vector<std::string>& names,
                         std::vector<std::string>& bound, int depth, bool closed_heavy) {
    if (depth == 0 || flip(s, 0.3)) return atom(s, terms, names, bound, closed_heavy);
    switch (pick(s, 5)) {
      case 0:
        return "~" + formula_at(s, terms, names, bound, depth - 1, closed_heavy);
      case 1:
      case 2: {
        auto a = formula_at(s, terms, names, bound, depth - 1, closed_heavy);
        auto b = formula_at(s, terms, names, bound, depth - 1, closed_heavy);
        return "(" + a + (flip(s, 0.5) ? " & " : " | ") + b + ")";
      }
      default: {
        if (bound.size() >= 2) return "~" + formula_at(s, terms, names, bound, depth - 1, closed_heavy);
        std::string v = bound.empty() ? "x" : "y";
        std::string q = flip(s, 0.5) ? "forall " : "exists ";
        bound.push_back(v);
        auto body = formula_at(s, terms, names, bound, depth - 1, closed_heavy);
        bound.pop_back();
        return q + v + ". " + body;
      }
    }
  }

  std::mt19937_64 rng_;
};

struct RandomRun {
  std::string text;
  Natural witness_max = 0;
  Pipeline pipeline;
};

/// A random pipeline with |U| <= max_sentences and |W| <= max_witnesses,
/// regenerating until the bounds hold.
inline RandomRun random_run(Generator& g, std::size_t max_sentences = 500, std::size_t max_witnesses = 12,
                            std::size_t copies = 3) {
  for (;;) {
    RandomRun r;
    r.witness_max = g.below(4);
    r.text = g.seed_text(1 + g.below(3), copies);
    Caps caps;
    caps.max_sentences = max_sentences;
    try {
      r.pipeline = run_pipeline(r.text, r.witness_max, caps);
    } catch (const Error&) {
      continue;
    }
    if (r.pipeline.U.witnesses().size() > max_witnesses) continue;
    return r;
  }
}

/// Names declared in seed file text, in order.
inline std::vector<std::string> declared_names(const std::string& text) {
  std::vector<std::string> out;
  static const std::regex decl(R"(^(\w+) :=)", std::regex::multiline);
  for (std::sregex_iterator it(text.begin(), text.end(), decl), end; it != end; ++it) out.push_back((*it)[1]);
  return out;
}

struct Pair {
  FormulaPtr a;
  Assignment alpha;
  FormulaPtr b;
  Assignment beta;
};

// Quantifier prefixes are peeled so pairs also carry open formulas.
inline std::pair<FormulaPtr, Assignment> open_up(FormulaPtr f, Generator& g) {
  Assignment alpha;
  while (is_quantifier(*f) && g.chance(0.6)) {
    alpha[f->var] = g.below(4);
    f = f->left;
  }
  return {f, restrict_to(alpha, f)};
}

// Half the pairs share a shape and differ only in the spelling of closed terms,
// so they tend to be similar; the rest are independent.
inline Pair random_pair(Generator& g) {
  std::uint64_t shape = g.rng()();
  std::mt19937_64 t1(g.rng()()), t2(g.rng()());
  auto [a, alpha] = open_up(parse_formula(g.formula(shape, t1, {})), g);
  FormulaPtr b;
  Assignment beta;
  if (g.chance(0.5)) {
    auto peeled = parse_formula(g.formula(shape, t2, {}));
    while (is_quantifier(*peeled) && alpha.count(peeled->var)) {
      beta[peeled->var] = g.chance(0.8) ? alpha.at(peeled->var) : g.below(4);
      peeled = peeled->left;
    }
    b = peeled;
    beta = restrict_to(beta, b);
  } else {
    std::tie(b, beta) = open_up(parse_formula(g.formula(g.rng()(), t2, {})), g);
  }
  return {a, alpha, b, beta};
}

}  // namespace cdwb::testing
