// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Randomness comes from CDWB_SEED (see support.hpp).

#include "cdwb/cdwb.h"
#include "cdwb/checker.hpp"
#include "cdwb/similarity.hpp"
#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>

using namespace cdwb;
namespace t = cdwb::testing;

namespace {

constexpr int kRandomRuns = 200;
constexpr std::size_t kMaxSentences = 500;
constexpr std::size_t kMaxWitnesses = 12;
constexpr double kMonotonicitySeconds = 60.0;
constexpr std::size_t kMinVariants = 3;
constexpr double kMinRunsWithVariantGroups = 0.5;

constexpr int kSimilarityPairs = 1000;
constexpr int kSimilarityAttempts = 5000;
constexpr std::size_t kOracleBound = 18;
constexpr int kEquivalenceShapes = 60;
constexpr int kEquivalenceSpellings = 4;

constexpr int kEvRuns = 50;
constexpr std::size_t kEvMaxSentences = 150;
constexpr std::size_t kEvMaxWitnesses = 8;
constexpr int kGenerations = 3;
constexpr std::size_t kGammaPerGeneration = 33;
constexpr std::size_t kGammaMax = 100;

constexpr int kMutations = 100;
constexpr std::size_t kMutationMinSentences = 3;

constexpr int kDeterminismSeedSets = 5;

bool all_ok = true;

void verdict(int n, bool ok, const std::string& text) {
  all_ok = all_ok && ok;
  std::printf("criterion %d %s: %s\n", n, ok ? "PASS" : "FAIL", text.c_str());
  std::fflush(stdout);
}

std::string first_failure(const AxiomReport& r) {
  for (const auto& name : r.failures()) {
    const auto& w = r.results.at(name).witness;
    return name + (w ? " (" + w->detail + ")" : "");
  }
  return "";
}

// Direct restatement of the stage inclusions, independent of the checker.
bool monotone(const StageTrace& trace) {
  const auto& st = trace.stages;
  for (std::size_t k = 0; k < st.size(); ++k) {
    for (std::size_t n = k; n < st.size(); ++n) {
      for (Code c : st[k].D) {
        if (!st[n].D.count(c)) return false;
        if (st[k].T.count(c) != st[n].T.count(c)) return false;
      }
    }
  }
  return true;
}

std::size_t largest_variant_group(const Universe& U) {
  std::map<std::string, std::size_t> groups;
  std::size_t best = 0;
  for (const auto& m : U.members()) best = std::max(best, ++groups[to_string(collapse_closed_terms(m.formula))]);
  return best;
}

struct RunStats {
  int runs = 0;
  int mono_bad = 0, fix_bad = 0, comp_bad = 0, cd_bad = 0;
  int with_groups = 0;
  std::size_t largest_universe = 0, largest_w = 0, max_fixpoint = 0;
  std::size_t r_instances = 0;
  double mono_seconds = 0;
  std::string mono_note, fix_note, comp_note, cd_note;
};

RunStats pipeline_suites(std::uint64_t seed) {
  RunStats s;
  t::Generator g(seed);
  using clock = std::chrono::steady_clock;
  for (int i = 0; i < kRandomRuns; ++i) {
    auto start = clock::now();
    auto run = t::random_run(g, kMaxSentences, kMaxWitnesses);
    const auto& p = run.pipeline;
    auto mono = check_monotonicity(p.trace);
    bool mono_ok = mono.passed() && monotone(p.trace);
    s.mono_seconds += std::chrono::duration<double>(clock::now() - start).count();
    ++s.runs;
    s.largest_universe = std::max(s.largest_universe, p.U.size());
    s.largest_w = std::max(s.largest_w, p.U.witnesses().size());
    if (!mono_ok && s.mono_bad++ == 0) s.mono_note = "run " + std::to_string(i) + ": " + first_failure(mono);

    bool fix_ok = p.trace.fixpoint && *p.trace.fixpoint <= p.U.size() + 2 &&
                  d_operator(p.trace.D_omega, p.trace.T_omega, p.U) == p.trace.D_omega &&
                  check_fixpoint(p.trace.D_omega, p.trace.T_omega, p.U).passed();
    if (p.trace.fixpoint) s.max_fixpoint = std::max(s.max_fixpoint, *p.trace.fixpoint);
    if (!fix_ok && s.fix_bad++ == 0) s.fix_note = "run " + std::to_string(i);

    auto comp = check_partial_comp(p.trace.D_omega, p.trace.T_omega, p.U);
    if (!comp.passed() && s.comp_bad++ == 0) s.comp_note = "run " + std::to_string(i) + ": " + first_failure(comp);

    auto cd = check_cd_axioms(p.trace.D_omega, p.tf, p.U);
    cd.merge(check_compat(p.tf, p.trace.T_omega, p.trace.D_omega));
    if (!cd.passed() && s.cd_bad++ == 0) s.cd_note = "run " + std::to_string(i) + ": " + first_failure(cd);
    s.r_instances += cd.results.at("R1").instances + cd.results.at("R2").instances;
    if (largest_variant_group(p.U) >= kMinVariants) ++s.with_groups;
  }
  return s;
}

void golden() {
  auto p = t::run_pipeline("L := ~T(quote(L))\nK := T(quote(K))\nZ := 0=0\nE := T(quote(Z))\nF := T(quote(E))", 3);
  Code L = *p.table.code_of("L"), K = *p.table.code_of("K"), F = *p.table.code_of("F");
  std::optional<std::size_t> entry;
  for (const auto& st : p.trace.stages) {
    if (st.D.count(F) && st.T.count(F)) {
      entry = st.index;
      break;
    }
  }
  bool ok = p.trace.fixpoint && !p.trace.D_omega.count(L) && !p.trace.D_omega.count(K) &&
            p.trace.D_omega.count(F) && p.trace.T_omega.count(F) && entry == 3;
  verdict(5, ok,
          std::string("liar ") + (p.trace.D_omega.count(L) ? "in" : "not in") + " D, truth-teller " +
              (p.trace.D_omega.count(K) ? "in" : "not in") + " D, T(T(0=0)) first true at stage " +
              (entry ? std::to_string(*entry) : "none"));
}

void similarity_suite(std::uint64_t seed) {
  t::Generator g(seed);
  int compared = 0, disagree = 0, similar_pairs = 0, attempts = 0;
  std::string note;
  std::vector<std::pair<FormulaPtr, Assignment>> pool;
  while (compared < kSimilarityPairs && attempts++ < kSimilarityAttempts) {
    auto p = t::random_pair(g);
    bool slow;
    try {
      slow = similar_oracle(p.a, p.alpha, p.b, p.beta, kOracleBound);
    } catch (const CapExceeded&) {
      continue;
    }
    bool fast = similar(p.a, p.alpha, p.b, p.beta);
    ++compared;
    similar_pairs += fast;
    if (fast != slow && disagree++ == 0) note = "; first disagreement " + to_string(p.a) + " vs " + to_string(p.b);
    if (pool.size() < 200) {
      pool.emplace_back(p.a, p.alpha);
      pool.emplace_back(p.b, p.beta);
    }
  }
  for (int i = 0; i < kEquivalenceShapes; ++i) {
    std::uint64_t shape = g.rng()();
    for (int k = 0; k < kEquivalenceSpellings; ++k) {
      std::mt19937_64 terms(g.rng()());
      auto f = parse_formula(g.formula(shape, terms, {}));
      Assignment alpha;
      std::mt19937_64 fixed(shape);
      while (is_quantifier(*f)) {
        alpha[f->var] = fixed() % 3;
        f = f->left;
      }
      pool.emplace_back(f, restrict_to(alpha, f));
    }
  }
  const std::size_t n = pool.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = similar(pool[i].first, pool[i].second, pool[j].first, pool[j].second);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < n; ++i) {
    violations += !rel[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      violations += rel[i][j] != rel[j][i];
      if (!rel[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k) violations += rel[j][k] && !rel[i][k];
    }
  }
  bool ok = compared >= kSimilarityPairs && disagree == 0 && violations == 0;
  verdict(6, ok,
          std::to_string(compared) + " pairs within oracle bound " + std::to_string(kOracleBound) + ", " +
              std::to_string(similar_pairs) + " similar, " + std::to_string(disagree) + " disagreements; " +
              std::to_string(violations) + " equivalence violations over " + std::to_string(n) + " entries" + note);
}

void ev_suite(std::uint64_t seed) {
  t::Generator g(seed);
  int bad = 0;
  std::size_t largest_gamma = 0, entries = 0, atom_only = 0;
  std::string note;
  auto fail = [&](int run, const std::string& why) {
    if (bad++ == 0) note = "; run " + std::to_string(run) + ": " + why;
  };
  for (int i = 0; i < kEvRuns; ++i) {
    auto run = t::random_run(g, kEvMaxSentences, kEvMaxWitnesses);
    auto& p = run.pipeline;
    auto names = t::declared_names(run.text);
    SatContext ctx(p.table, p.U.codes(), p.U.witnesses(), p.U.caps().limits());
    auto pair = pair_from_pipeline(ctx, p.U, p.trace.D_omega, p.trace.T_omega);
    auto pre = check_det_comp(ctx, pair.fragment, pair.D, pair.S);
    if (!pre.passed()) {
      fail(i, "pipeline pair not determinately compositional: " + first_failure(pre));
      continue;
    }
    auto members = p.U.members();
    std::vector<FormulaPtr> gamma;
    std::optional<Generation> prev;
    for (int step = 0; step < kGenerations; ++step) {
      for (std::size_t k = 0; k < kGammaPerGeneration && gamma.size() < kGammaMax; ++k) {
        if (k % 3 == 0 && !members.empty()) {
          gamma.push_back(members[g.below(members.size())].formula);
        } else {
          std::mt19937_64 terms(g.rng()());
          gamma.push_back(parse_formula(g.formula(g.rng()(), terms, names), &p.table));
        }
      }
      auto gen = ev_extend(ctx, pair, prev ? &*prev : nullptr, gamma);
      auto r = check_gamma(ctx, gen.truths, gamma, pair.D, pair.S, prev ? &*prev : nullptr);
      if (!r.passed()) fail(i, "generation " + std::to_string(step) + ": " + first_failure(r));
      if (prev) {
        for (const auto& e : prev->domain) {
          if (!gen.domain.count(e) || gen.truths.count(e) != prev->truths.count(e)) {
            fail(i, "generation " + std::to_string(step) + " changed an earlier value");
            break;
          }
        }
      }
      entries += gen.domain.size();
      atom_only += gen.atom_clause_only;
      prev = std::move(gen);
    }
    largest_gamma = std::max(largest_gamma, gamma.size());
  }
  verdict(7, bad == 0,
          std::to_string(kEvRuns) + " pipeline pairs, " + std::to_string(kGenerations) +
              " chained generations each, largest gamma " + std::to_string(largest_gamma) + ", " +
              std::to_string(entries) + " entries evaluated, " + std::to_string(atom_only) +
              " atom-clause-only truths, " + std::to_string(bad) + " failures" + note);
}

void mutation_suite(std::uint64_t seed) {
  t::Generator g(seed);
  int done = 0, detected = 0;
  std::map<std::string, int> by_table;
  std::string note;
  while (done < kMutations) {
    auto run = t::random_run(g, kMaxSentences, kMaxWitnesses);
    const auto& p = run.pipeline;
    if (p.U.size() < kMutationMinSentences || p.trace.D_omega.empty()) continue;
    auto codes = p.U.codes();
    std::vector<Code> list(codes.begin(), codes.end());
    Code c = list[g.below(list.size())];
    auto trace = p.trace;
    auto tf = p.tf;
    const char* table = nullptr;
    switch (done % 3) {
      case 0:
        table = "D_omega";
        if (!trace.D_omega.erase(c)) trace.D_omega.insert(c);
        break;
      case 1:
        table = "T_omega";
        if (!trace.T_omega.erase(c)) trace.T_omega.insert(c);
        break;
      default:
        table = "t_final";
        tf[c] = !tf[c];
        break;
    }
    ++done;
    ++by_table[table];
    if (!check_pipeline(trace, tf, p.U).passed()) {
      ++detected;
    } else if (note.empty()) {
      note = "; missed a flip of code " + std::to_string(c) + " in " + table;
    }
  }
  std::string split;
  for (const auto& [k, v] : by_table) split += (split.empty() ? "" : ", ") + k + " " + std::to_string(v);
  verdict(8, detected == done,
          std::to_string(detected) + "/" + std::to_string(done) + " single-bit corruptions detected (" + split + ")" +
              note);
}

struct Outputs {
  std::string build, check, ev, sim;
  bool operator==(const Outputs&) const = default;
};

std::string take(char* p) {
  std::string out = p ? p : "";
  cdwb_free_string(p);
  return out;
}

Outputs api_run(const std::string& seeds, const std::string& gamma, const std::string& pairs) {
  std::unique_ptr<cdwb_session, decltype(&cdwb_session_destroy)> s(cdwb_session_create(), cdwb_session_destroy);
  Outputs o;
  cdwb_set_option(s.get(), "witness_max", 2);
  cdwb_set_option(s.get(), "diff_witness", 1);
  if (cdwb_load_seeds(s.get(), seeds.c_str()) != CDWB_OK) return o;
  char* a = nullptr;
  char* b = nullptr;
  cdwb_build(s.get(), &a);
  o.build = take(a);
  cdwb_check(s.get(), o.build.c_str(), &a);
  o.check = take(a);
  cdwb_ev(s.get(), gamma.c_str(), nullptr, nullptr, &a, &b);
  o.ev = take(a) + take(b);
  cdwb_sim(s.get(), pairs.c_str(), &a);
  o.sim = take(a);
  return o;
}

void determinism(std::uint64_t seed) {
  t::Generator g(seed);
  int same = 0;
  std::size_t bytes = 0;
  for (int i = 0; i < kDeterminismSeedSets; ++i) {
    std::string seeds = g.seed_text(2, 3);
    std::string gamma;
    auto names = t::declared_names(seeds);
    for (int k = 0; k < 5; ++k) {
      std::mt19937_64 terms(g.rng()());
      gamma += "g" + std::to_string(k) + " := " + g.formula(g.rng()(), terms, names) + "\n";
    }
    std::string pairs;
    for (int k = 0; k < 5; ++k) {
      auto p = t::random_pair(g);
      auto side = [](const FormulaPtr& f, const Assignment& a) {
        std::string out = to_string(f) + " {";
        for (const auto& [v, n] : a) out += v + "=" + std::to_string(n) + ",";
        if (!a.empty()) out.pop_back();
        return out + "}";
      };
      pairs += side(p.a, p.alpha) + " ;; " + side(p.b, p.beta) + "\n";
    }
    auto first = api_run(seeds, gamma, pairs);
    auto second = api_run(seeds, gamma, pairs);
    same += first == second && !first.build.empty();
    bytes += first.build.size() + first.check.size() + first.ev.size() + first.sim.size();
  }
  verdict(9, same == kDeterminismSeedSets,
          std::to_string(same) + "/" + std::to_string(kDeterminismSeedSets) +
              " configurations gave byte-identical build, check, ev and sim reports (" + std::to_string(bytes) +
              " bytes per run)");
}

}  // namespace

int main() {
  const auto seed = t::test_seed();
  std::printf("seed %llu\n", static_cast<unsigned long long>(seed));

  auto s = pipeline_suites(seed);
  verdict(1, s.mono_bad == 0 && s.runs >= kRandomRuns && s.mono_seconds < kMonotonicitySeconds,
          std::to_string(s.runs) + " runs, |U| <= " + std::to_string(s.largest_universe) + ", |W| <= " +
              std::to_string(s.largest_w) + ", " + std::to_string(s.mono_bad) + " violations, " +
              std::to_string(static_cast<int>(s.mono_seconds * 1000)) + " ms" +
              (s.mono_note.empty() ? "" : "; " + s.mono_note));
  verdict(2, s.fix_bad == 0,
          std::to_string(s.runs) + " runs, latest fixpoint at stage " + std::to_string(s.max_fixpoint) + ", " +
              std::to_string(s.fix_bad) + " failures" + (s.fix_note.empty() ? "" : "; " + s.fix_note));
  verdict(3, s.comp_bad == 0,
          std::to_string(s.runs) + " runs, " + std::to_string(s.comp_bad) + " failures" +
              (s.comp_note.empty() ? "" : "; " + s.comp_note));
  bool groups_ok = s.with_groups >= kMinRunsWithVariantGroups * s.runs;
  verdict(4, s.cd_bad == 0 && groups_ok,
          std::to_string(s.runs) + " runs, " + std::to_string(s.cd_bad) + " failures, " +
              std::to_string(s.with_groups) + " runs with a group of >= " + std::to_string(kMinVariants) +
              " equal-valued spellings, " + std::to_string(s.r_instances) + " regularity instances" +
              (s.cd_note.empty() ? "" : "; " + s.cd_note));
  golden();
  similarity_suite(seed + 1);
  ev_suite(seed + 2);
  mutation_suite(seed + 3);
  determinism(seed + 4);
  return all_ok ? 0 : 1;
}
