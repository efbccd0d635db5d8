// cdwb: batch front end over the C interface.
//
// Exit codes
//   build  0 fixpoint found, 2 stage cap hit, 1 error
//   check  0 all checks pass or are vacuous, 3 some check fails, 1 error or malformed trace
//   ev     0 extension verified, 4 (D0, S0) not determinately compositional,
//          3 verification failed, 1 error
//   sim    0, 1 error

#include "cdwb/cdwb.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

struct Options {
  std::string seeds;
  std::uint64_t witness_max = 3;
  std::uint64_t max_stages = 100;
  std::uint64_t cap_sentences = 10'000;
  std::uint64_t cap_value = 1'000'000'000;
  std::string out;
  bool diff_witness = false;
  std::string trace;
  std::string gamma;
  std::string d0;
  std::string s0;
  std::string report;
  std::string pairs;
};

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool emit(const std::string& path, const char* text) {
  if (!text) return true;
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

using Session = std::unique_ptr<cdwb_session, decltype(&cdwb_session_destroy)>;

struct Owned {
  char* text = nullptr;
  ~Owned() { cdwb_free_string(text); }
};

int fail(const cdwb_session* s, const std::string& context) {
  std::cerr << "cdwb: " << context << ": " << cdwb_last_error(s) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stage iteration, axiom checks and satisfaction-class extension for T/D sentences"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seeds", o.seeds, "seed file (name := formula per line)");
    sub->add_option("--witness-max", o.witness_max, "witnesses 0..N join the sentence codes")->capture_default_str();
    sub->add_option("--max-stages", o.max_stages, "stage cap")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--cap-sentences", o.cap_sentences, "universe size cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--cap-value", o.cap_value, "term value cap")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", o.out, "output path (stdout when absent)");
  };

  auto* build = app.add_subcommand("build", "build the universe and run the stages");
  common(build);
  build->add_flag("--diff-witness", o.diff_witness, "rerun with 2N witnesses and report membership changes");

  auto* check = app.add_subcommand("check", "run every pipeline check on a trace");
  common(check);
  check->add_option("--trace", o.trace, "trace written by build")->required();

  auto* ev = app.add_subcommand("ev", "extend the pipeline pair to the formulas of a gamma file");
  common(ev);
  ev->add_option("--gamma", o.gamma, "formulas in the seed grammar")->required();
  ev->add_option("--d0", o.d0, "determinate entries (class dump) replacing the pipeline pair");
  ev->add_option("--s0", o.s0, "true entries (class dump) replacing the pipeline pair");
  ev->add_option("--report", o.report, "check report path (stdout when absent)");

  auto* sim = app.add_subcommand("sim", "similarity verdicts for formula/assignment pairs");
  common(sim);
  sim->add_option("--pairs", o.pairs, "lines of the form: phi {v=1} ;; psi {w=2}")->required();

  CLI11_PARSE(app, argc, argv);

  Session s(cdwb_session_create(), &cdwb_session_destroy);
  if (!s) {
    std::cerr << "cdwb: out of memory\n";
    return 1;
  }
  const std::pair<const char*, std::uint64_t> settings[] = {{"witness_max", o.witness_max},
                                                            {"max_stages", o.max_stages},
                                                            {"cap_sentences", o.cap_sentences},
                                                            {"cap_value", o.cap_value},
                                                            {"diff_witness", o.diff_witness ? 1U : 0U}};
  for (const auto& [key, value] : settings) {
    if (cdwb_set_option(s.get(), key, value) != CDWB_OK) return fail(s.get(), key);
  }

  auto read = [&](const std::string& path) -> std::optional<std::string> {
    auto text = slurp(path);
    if (!text) std::cerr << "cdwb: cannot read " << path << "\n";
    return text;
  };

  std::string seed_text;
  if (!o.seeds.empty()) {
    auto text = read(o.seeds);
    if (!text) return 1;
    seed_text = *text;
  }
  if (cdwb_load_seeds(s.get(), seed_text.c_str()) != CDWB_OK) return fail(s.get(), o.seeds);

  auto written = [&](const std::string& path, const char* text) {
    if (emit(path, text)) return true;
    std::cerr << "cdwb: cannot write " << path << "\n";
    return false;
  };

  if (build->parsed()) {
    Owned report;
    auto st = cdwb_build(s.get(), &report.text);
    if (st != CDWB_OK && st != CDWB_STAGE_CAP) return fail(s.get(), "build");
    if (!written(o.out, report.text)) return 1;
    if (st == CDWB_STAGE_CAP) std::cerr << "cdwb: no fixpoint within " << o.max_stages << " stages\n";
    return st == CDWB_OK ? 0 : 2;
  }

  if (check->parsed()) {
    auto trace = read(o.trace);
    if (!trace) return 1;
    Owned report;
    auto st = cdwb_check(s.get(), trace->c_str(), &report.text);
    if (st != CDWB_OK && st != CDWB_CHECK_FAILED) return fail(s.get(), o.trace);
    if (!written(o.out, report.text)) return 1;
    return st == CDWB_OK ? 0 : 3;
  }

  if (ev->parsed()) {
    auto gamma = read(o.gamma);
    if (!gamma) return 1;
    std::optional<std::string> d0, s0;
    if (!o.d0.empty() && !(d0 = read(o.d0))) return 1;
    if (!o.s0.empty() && !(s0 = read(o.s0))) return 1;
    Owned dump, report;
    auto st = cdwb_ev(s.get(), gamma->c_str(), d0 ? d0->c_str() : nullptr, s0 ? s0->c_str() : nullptr,
                      &dump.text, &report.text);
    if (st == CDWB_PRECONDITION) {
      std::cerr << "cdwb: " << cdwb_last_error(s.get()) << "\n";
      written(o.report, report.text);
      return 4;
    }
    if (st != CDWB_OK && st != CDWB_CHECK_FAILED) return fail(s.get(), o.gamma);
    if (!written(o.out, dump.text) || !written(o.report, report.text)) return 1;
    return st == CDWB_OK ? 0 : 3;
  }

  if (sim->parsed()) {
    auto pairs = read(o.pairs);
    if (!pairs) return 1;
    Owned report;
    if (cdwb_sim(s.get(), pairs->c_str(), &report.text) != CDWB_OK) return fail(s.get(), o.pairs);
    return written(o.out, report.text) ? 0 : 1;
  }
  return 1;
}
