#pragma once

#include "cdwb/checker.hpp"

#include <functional>
#include <initializer_list>
#include <string>

namespace cdwb::detail {

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

// Accumulates instance outcomes per axiom name, keeping the first failure.
class Tally {
public:
  Tally(AxiomReport& report, std::initializer_list<const char*> names) : report_(report) {
    for (const char* n : names) report_.results.emplace(n, AxiomResult{});
  }

  void record(const std::string& name, bool ok, std::optional<Code> phi,
              const std::function<std::string()>& detail) {
    auto& r = report_.results[name];
    ++r.instances;
    if (ok) {
      if (r.status == Status::Vacuous) r.status = Status::Pass;
      return;
    }
    if (r.status != Status::Fail) {
      r.status = Status::Fail;
      r.witness = Witness{phi, detail()};
    }
  }

private:
  AxiomReport& report_;
};

}  // namespace cdwb::detail
