#pragma once

// JSON forms of traces, universes, axiom reports and satisfaction classes.
// Objects serialize with sorted keys and sets in ascending order.

#include "cdwb/checker.hpp"
#include "cdwb/similarity.hpp"

#include <json.hpp>

namespace cdwb {

using Json = nlohmann::json;

Json to_json(const Universe& U);
Json to_json(const StageTrace& trace);
Json to_json(const AxiomReport& report);
/// [{"formula": code, "assignment": {...}}]
Json to_json(const SatSet& entries);

/// Throws Error when the document is not a trace.
StageTrace trace_from_json(const Json& j);

/// "formula" may be a code of the context's table or formula text.
SatSet satset_from_json(const Json& j, SatContext& ctx);

std::string dump(const Json& j);

}  // namespace cdwb
