#pragma once

// Human text and the machine document for CLI runs. The machine document is
// JSON with a schema_version field; elapsed times are left out unless asked
// for, so equal configurations give byte-identical documents.

#include <string>
#include <vector>

#include "json.hpp"

#include "matchhom/certificates.hpp"
#include "matchhom/young_quotient.hpp"

namespace matchhom {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const AbelianGroup& g);
nlohmann::json to_json(const HomologySummary& h, bool timings);
nlohmann::json to_json(const CertificateReport& r, bool timings);
nlohmann::json to_json(const std::vector<OrbitCounts>& counts);

/// {"schema_version", "command", "config", "result"}.
nlohmann::json make_document(const std::string& command, nlohmann::json config, nlohmann::json result);
/// Two-space indentation and a trailing newline.
std::string dump_document(const nlohmann::json& doc);

std::string format_summary(const HomologySummary& h);
std::string format_report(const CertificateReport& r);
std::string format_orbits(const std::string& id, const std::vector<OrbitCounts>& counts);

}  // namespace matchhom
