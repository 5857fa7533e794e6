#pragma once

// JSON forms of the certificates and reports, and the ReportRecord envelope.
// mu_2 values are +-1 integers and square classes are squarefree integers.

#include <string>

#include <json.hpp>

#include "redei/family.hpp"
#include "redei/points.hpp"
#include "redei/redei_symbol.hpp"
#include "redei/selmer.hpp"

namespace redei {

using Json = nlohmann::json;

/// Bumped on any change to a payload shape.
inline constexpr int kSchemaVersion = 1;
/// Bumped on any change that can alter a computed value; part of the cache key.
inline constexpr const char* kEngineVersion = "1.0.0";

Json to_json(const Admissibility& a);
Json to_json(const RedeiCertificate& cert);
Json to_json(const SymbolValue& s);
/// {dim, basis, torsion_subbasis, symbols, field, generators}.
Json selmer_json(const DescentProblem& prob, const SelmerGroup& group, const std::vector<SymbolValue>& symbols);
Json to_json(const PrimeReport& r);
Json to_json(const ConicCheck& c);
Json to_json(const DescentCertificate& d);
Json to_json(const PointsResult& r);
Json to_json(const SurveyEntry& e);

/// {schema_version, timestamp, command, params, result, engine_version}.
Json make_record(const std::string& command, const Json& params, const Json& result);
/// The record with the timestamp removed, serialized with sorted keys.
std::string payload_string(const Json& record);
/// UTC, ISO 8601 to the second.
std::string utc_timestamp();

}  // namespace redei
