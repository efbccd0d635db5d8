#include "cdwb/report.hpp"

#include "cdwb/error.hpp"

namespace cdwb {

namespace {

Json codes(const CodeSet& s) {
  Json out = Json::array();
  for (Code c : s) out.push_back(c);
  return out;
}

CodeSet codes_from(const Json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string("trace: '") + what + "' must be an array of codes");
  CodeSet out;
  for (const auto& c : j) {
    if (!c.is_number_unsigned()) throw Error(std::string("trace: '") + what + "' must hold codes");
    out.insert(c.get<Code>());
  }
  return out;
}

}  // namespace

Json to_json(const Universe& U) {
  Json sentences = Json::array();
  for (const auto& m : U.members()) sentences.push_back({{"code", m.code}, {"text", to_string(m.formula)}});
  Json w = Json::array();
  for (Natural n : U.witnesses()) w.push_back(n);
  return {{"sentences", sentences}, {"witnesses", w}};
}

Json to_json(const StageTrace& trace) {
  Json stages = Json::array();
  for (const auto& s : trace.stages) stages.push_back({{"i", s.index}, {"D", codes(s.D)}, {"T", codes(s.T)}});
  Json out = {{"stages", stages}, {"D_omega", codes(trace.D_omega)}, {"T_omega", codes(trace.T_omega)}};
  out["fixpoint"] = trace.fixpoint ? Json(*trace.fixpoint) : Json(nullptr);
  return out;
}

StageTrace trace_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("stages") || !j["stages"].is_array())
    throw Error("trace: expected an object with a 'stages' array");
  for (const char* k : {"D_omega", "T_omega", "fixpoint"}) {
    if (!j.contains(k)) throw Error(std::string("trace: missing '") + k + "'");
  }
  StageTrace t;
  for (const auto& s : j["stages"]) {
    if (!s.is_object() || !s.contains("i") || !s["i"].is_number_unsigned() || !s.contains("D") ||
        !s.contains("T"))
      throw Error("trace: each stage needs 'i', 'D' and 'T'");
    t.stages.push_back(Stage{s["i"].get<std::size_t>(), codes_from(s["D"], "D"), codes_from(s["T"], "T")});
  }
  if (!j["fixpoint"].is_null()) {
    if (!j["fixpoint"].is_number_unsigned()) throw Error("trace: 'fixpoint' must be a stage index or null");
    t.fixpoint = j["fixpoint"].get<std::size_t>();
  }
  t.D_omega = codes_from(j["D_omega"], "D_omega");
  t.T_omega = codes_from(j["T_omega"], "T_omega");
  return t;
}

Json to_json(const AxiomReport& report) {
  Json results = Json::array();
  for (const auto& [name, r] : report.results) {
    Json entry = {{"axiom", name}, {"status", to_string(r.status)}, {"instances", r.instances}};
    if (r.witness) {
      entry["witness"] = {{"phi", r.witness->phi ? Json(*r.witness->phi) : Json(nullptr)},
                          {"detail", r.witness->detail}};
    }
    results.push_back(std::move(entry));
  }
  return {{"notes", report.notes}, {"passed", report.passed()}, {"results", results}};
}

Json to_json(const SatSet& entries) {
  Json out = Json::array();
  for (const auto& e : entries) {
    Json a = Json::object();
    for (const auto& [v, n] : e.assignment) a[v] = n;
    out.push_back({{"formula", e.formula}, {"assignment", a}});
  }
  return out;
}

SatSet satset_from_json(const Json& j, SatContext& ctx) {
  if (!j.is_array()) throw Error("satisfaction class: expected an array of entries");
  SatSet out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("formula")) throw Error("satisfaction class: entry without 'formula'");
    SatEntry entry;
    const auto& f = e["formula"];
    if (f.is_number_unsigned()) {
      entry.formula = f.get<Code>();
      ctx.formula(entry.formula);
    } else if (f.is_string()) {
      entry.formula = ctx.add(parse_formula(f.get<std::string>(), &ctx.table()));
    } else {
      throw Error("satisfaction class: 'formula' must be a code or formula text");
    }
    if (e.contains("assignment")) {
      if (!e["assignment"].is_object()) throw Error("satisfaction class: 'assignment' must be an object");
      for (const auto& [v, n] : e["assignment"].items()) {
        if (!n.is_number_unsigned()) throw Error("satisfaction class: assignment values must be naturals");
        entry.assignment[v] = n.get<Natural>();
      }
    }
    apply_assignment(ctx.formula(entry.formula), entry.assignment);
    out.insert(std::move(entry));
  }
  return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cdwb
