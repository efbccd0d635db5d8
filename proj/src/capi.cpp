#include "cdwb/cdwb.h"

#include "cdwb/error.hpp"
#include "cdwb/report.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>

using namespace cdwb;

struct cdwb_session {
  Natural witness_max = 3;
  std::size_t max_stages = 100;
  Caps caps;
  bool diff_witness = false;

  SentenceTable table;
  std::vector<Code> seeds;
  bool seeded = false;
  std::optional<Universe> universe;
  std::string error;
};

namespace {

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** slot, const std::string& s) {
  if (slot) *slot = copy_out(s);
}

void reset(char** slot) {
  if (slot) *slot = nullptr;
}

template <class F>
cdwb_status guarded(cdwb_session* s, F&& body) {
  if (!s) return CDWB_BAD_ARGUMENT;
  s->error.clear();
  try {
    return body();
  } catch (const PreconditionError& e) {
    s->error = e.what();
    return CDWB_PRECONDITION;
  } catch (const Json::exception& e) {
    s->error = std::string("malformed JSON: ") + e.what();
    return CDWB_MALFORMED;
  } catch (const std::exception& e) {
    s->error = e.what();
    return CDWB_ERROR;
  }
}

const Universe& universe_of(cdwb_session* s) {
  if (!s->universe) s->universe = build_universe(s->table, s->seeds, s->witness_max, s->caps);
  return *s->universe;
}

Json true_codes(const TruthTable& t) {
  Json out = Json::array();
  for (const auto& [c, v] : t) {
    if (v) out.push_back(c);
  }
  return out;
}

Json witness_diff(cdwb_session* s, const Universe& U, const StageTrace& trace, const TruthTable& tf) {
  SentenceTable table = s->table;
  Natural larger = s->witness_max * 2;
  auto U2 = build_universe(table, s->seeds, larger, s->caps);
  auto trace2 = run_stages(U2, s->max_stages);
  auto tf2 = t_final_table(trace2.D_omega, trace2.T_omega, U2);

  Json changes = Json::array();
  for (const auto& m : U.members()) {
    auto other = U2.lookup(m.formula);
    if (!other) continue;
    bool d1 = trace.D_omega.count(m.code) != 0;
    bool d2 = trace2.D_omega.count(*other) != 0;
    bool t1 = tf.at(m.code);
    bool t2 = tf2.at(*other);
    if (d1 == d2 && t1 == t2) continue;
    changes.push_back({{"text", to_string(m.formula)}, {"D", {d1, d2}}, {"T_final", {t1, t2}}});
  }
  return {{"witness_max", {s->witness_max, larger}},
          {"sentences", {U.size(), U2.size()}},
          {"fixpoint", {trace.fixpoint ? Json(*trace.fixpoint) : Json(nullptr),
                        trace2.fixpoint ? Json(*trace2.fixpoint) : Json(nullptr)}},
          {"changes", changes}};
}

std::pair<FormulaPtr, Assignment> parse_side(std::string_view side, const SentenceTable& table) {
  Assignment alpha;
  auto brace = side.find('{');
  std::string_view text = side.substr(0, brace);
  if (brace != std::string_view::npos) {
    auto close = side.find('}', brace);
    if (close == std::string_view::npos) throw Error("unterminated assignment in '" + std::string(side) + "'");
    std::string_view body = side.substr(brace + 1, close - brace - 1);
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      auto eqpos = item.find('=');
      if (eqpos == std::string_view::npos) throw Error("assignment item '" + std::string(item) + "' needs '='");
      auto trim = [](std::string_view v) {
        while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
        while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
        return v;
      };
      auto name = trim(item.substr(0, eqpos));
      auto num = trim(item.substr(eqpos + 1));
      Natural n = 0;
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
      if (ec != std::errc{} || p != num.data() + num.size())
        throw Error("assignment value '" + std::string(num) + "' is not a natural");
      alpha[std::string(name)] = n;
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
  }
  auto f = parse_formula(text, &table);
  return {f, alpha};
}

}  // namespace

extern "C" {

cdwb_session* cdwb_session_create(void) { return new (std::nothrow) cdwb_session(); }

void cdwb_session_destroy(cdwb_session* s) { delete s; }

cdwb_status cdwb_set_option(cdwb_session* s, const char* key, uint64_t value) {
  if (!s || !key) return CDWB_BAD_ARGUMENT;
  std::string_view k = key;
  if (s->universe && k != "diff_witness" && k != "max_stages") {
    s->error = "options that shape the universe must be set before it is built";
    return CDWB_BAD_ARGUMENT;
  }
  if (k == "witness_max") {
    s->witness_max = value;
  } else if (k == "max_stages") {
    if (value == 0) {
      s->error = "max_stages must be positive";
      return CDWB_BAD_ARGUMENT;
    }
    s->max_stages = value;
  } else if (k == "cap_sentences") {
    if (value == 0) {
      s->error = "cap_sentences must be positive";
      return CDWB_BAD_ARGUMENT;
    }
    s->caps.max_sentences = value;
  } else if (k == "cap_value") {
    if (value == 0 || value >= (uint64_t{1} << 62)) {
      s->error = "cap_value must be in [1, 2^62)";
      return CDWB_BAD_ARGUMENT;
    }
    s->caps.max_value = value;
  } else if (k == "diff_witness") {
    s->diff_witness = value != 0;
  } else {
    s->error = "unknown option '" + std::string(k) + "'";
    return CDWB_BAD_ARGUMENT;
  }
  return CDWB_OK;
}

cdwb_status cdwb_load_seeds(cdwb_session* s, const char* text) {
  return guarded(s, [&] {
    if (!text) return CDWB_BAD_ARGUMENT;
    if (s->seeded) throw Error("seeds already loaded");
    for (const auto& d : parse_source(text, s->table)) s->seeds.push_back(d.code);
    s->seeded = true;
    return CDWB_OK;
  });
}

cdwb_status cdwb_build(cdwb_session* s, char** report_json) {
  reset(report_json);
  return guarded(s, [&] {
    const auto& U = universe_of(s);
    auto trace = run_stages(U, s->max_stages);
    auto tf = t_final_table(trace.D_omega, trace.T_omega, U);
    Json j = to_json(trace);
    j["universe"] = to_json(U);
    j["T_final"] = true_codes(tf);
    if (s->diff_witness) j["witness_diff"] = witness_diff(s, U, trace, tf);
    put(report_json, dump(j));
    return trace.fixpoint ? CDWB_OK : CDWB_STAGE_CAP;
  });
}

cdwb_status cdwb_check(cdwb_session* s, const char* trace_json, char** report_json) {
  reset(report_json);
  return guarded(s, [&] {
    if (!trace_json) return CDWB_BAD_ARGUMENT;
    StageTrace trace;
    Json doc;
    try {
      doc = Json::parse(trace_json);
      trace = trace_from_json(doc);
    } catch (const std::exception& e) {
      s->error = std::string("malformed trace: ") + e.what();
      return CDWB_MALFORMED;
    }
    const auto& U = universe_of(s);
    TruthTable tf;
    if (doc.contains("T_final")) {
      if (!doc["T_final"].is_array()) {
        s->error = "malformed trace: 'T_final' must be an array";
        return CDWB_MALFORMED;
      }
      for (const auto& m : U.members()) tf[m.code] = false;
      for (const auto& c : doc["T_final"]) {
        if (!c.is_number_unsigned()) {
          s->error = "malformed trace: 'T_final' must hold codes";
          return CDWB_MALFORMED;
        }
        tf[c.get<Code>()] = true;
      }
    } else {
      tf = t_final_table(trace.D_omega, trace.T_omega, U);
    }
    auto report = check_pipeline(trace, tf, U);
    put(report_json, dump(to_json(report)));
    return report.passed() ? CDWB_OK : CDWB_CHECK_FAILED;
  });
}

cdwb_status cdwb_ev(cdwb_session* s, const char* gamma_text, const char* d0_json, const char* s0_json,
                    char** class_json, char** report_json) {
  reset(class_json);
  reset(report_json);
  return guarded(s, [&] {
    if (!gamma_text) return CDWB_BAD_ARGUMENT;
    const auto& U = universe_of(s);
    auto trace = run_stages(U, s->max_stages);
    SatContext ctx(s->table, U.codes(), U.witnesses(), s->caps.limits());
    auto pair = pair_from_pipeline(ctx, U, trace.D_omega, trace.T_omega);
    if (d0_json || s0_json) {
      try {
        pair.D = d0_json ? satset_from_json(Json::parse(d0_json), ctx) : SatSet{};
        pair.S = s0_json ? satset_from_json(Json::parse(s0_json), ctx) : SatSet{};
      } catch (const std::exception& e) {
        s->error = std::string("malformed satisfaction class: ") + e.what();
        return CDWB_MALFORMED;
      }
      SatSet seeds = pair.D;
      seeds.insert(pair.S.begin(), pair.S.end());
      pair.fragment = close_entries(ctx, seeds);
    }

    // Gamma names live only for this call.
    SentenceTable scratch = s->table;
    std::vector<FormulaPtr> gamma;
    for (const auto& d : parse_source(gamma_text, scratch, true)) gamma.push_back(d.formula);

    auto pre = check_det_comp(ctx, pair.fragment, pair.D, pair.S);
    if (!pre.passed()) {
      put(report_json, dump(to_json(pre)));
      s->error = "(D0, S0) is not determinately compositional";
      return CDWB_PRECONDITION;
    }
    auto gen = ev_extend(ctx, pair, nullptr, gamma);
    auto report = check_gamma(ctx, gen.truths, gamma, pair.D, pair.S, nullptr);
    put(class_json, dump(to_json(gen.truths)));
    put(report_json, dump(to_json(report)));
    return report.passed() ? CDWB_OK : CDWB_CHECK_FAILED;
  });
}

cdwb_status cdwb_sim(cdwb_session* s, const char* pairs_text, char** report_json) {
  reset(report_json);
  return guarded(s, [&] {
    if (!pairs_text) return CDWB_BAD_ARGUMENT;
    const auto limits = s->caps.limits();
    Json pairs = Json::array();
    std::istringstream in(pairs_text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      auto sep = line.find(";;");
      if (sep == std::string::npos) throw Error("line " + std::to_string(line_no) + ": expected ';;'");
      try {
        auto [a, alpha] = parse_side(std::string_view(line).substr(0, sep), s->table);
        auto [b, beta] = parse_side(std::string_view(line).substr(sep + 2), s->table);
        auto ca = canonical_pair(a, alpha, limits);
        auto cb = canonical_pair(b, beta, limits);
        pairs.push_back({{"line", line_no},
                         {"left", to_string(ca)},
                         {"right", to_string(cb)},
                         {"similar", equal(ca, cb)}});
      } catch (const Error& e) {
        throw Error("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    put(report_json, dump(Json{{"pairs", pairs}}));
    return CDWB_OK;
  });
}

const char* cdwb_last_error(const cdwb_session* s) { return s ? s->error.c_str() : "no session"; }

void cdwb_free_string(char* str) { std::free(str); }

}  // extern "C"
