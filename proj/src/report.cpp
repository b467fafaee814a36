#include "matchhom/report.hpp"

#include <sstream>

namespace matchhom {

namespace {

nlohmann::json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();  // beyond 64 bits
}

}  // namespace

nlohmann::json to_json(const AbelianGroup& g) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : g.invariant_factors()) factors.push_back(integer_json(f));
  return {{"free_rank", g.free_rank()}, {"invariant_factors", factors}, {"text", g.to_string()}};
}

nlohmann::json to_json(const HomologySummary& h, bool timings) {
  nlohmann::json degrees = nlohmann::json::array();
  for (int d = h.min_degree; d <= h.max_degree(); ++d) {
    auto g = to_json(h.at(d));
    g["degree"] = d;
    degrees.push_back(std::move(g));
  }
  nlohmann::json out = {{"complex", h.complex_id}, {"coefficients", h.coefficients}, {"degrees", degrees}};
  if (timings) out["seconds"] = h.seconds;
  return out;
}

nlohmann::json to_json(const CertificateReport& r, bool timings) {
  auto item = [](const CertificateItem& i) {
    return nlohmann::json{{"label", i.label}, {"expected", i.expected}, {"computed", i.computed}, {"ok", i.ok}};
  };
  nlohmann::json items = nlohmann::json::array();
  nlohmann::json diff = nlohmann::json::array();
  for (const auto& i : r.items) items.push_back(item(i));
  for (const auto& i : r.diff()) diff.push_back(item(i));
  nlohmann::json out = {{"name", r.name}, {"status", to_string(r.status)}, {"items", items},
                        {"diff", diff}, {"notes", r.notes}};
  if (r.status == CertificateStatus::skipped) out["skip_reason"] = r.skip_reason;
  if (timings) out["seconds"] = r.seconds;
  return out;
}

nlohmann::json to_json(const std::vector<OrbitCounts>& counts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : counts) {
    out.push_back({{"degree", c.degree}, {"free", c.free}, {"order2", c.order2}, {"gamma", c.gamma},
                   {"delta", c.delta}});
  }
  return out;
}

nlohmann::json make_document(const std::string& command, nlohmann::json config, nlohmann::json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", std::move(config)},
          {"result", std::move(result)}};
}

std::string dump_document(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

std::string format_summary(const HomologySummary& h) {
  std::ostringstream out;
  out << "homology of " << h.complex_id << " over " << h.coefficients << "\n";
  for (int d = h.min_degree; d <= h.max_degree(); ++d) {
    out << "  H_" << d << " = " << (h.coefficients == "Z" ? h.at(d).to_string() : std::to_string(h.dimension(d)))
        << "\n";
  }
  return out.str();
}

std::string format_report(const CertificateReport& r) {
  std::ostringstream out;
  out << r.name << ": " << to_string(r.status);
  if (r.status == CertificateStatus::skipped) out << " (" << r.skip_reason << ")";
  out << "\n";
  for (const auto& i : r.items) {
    out << "  [" << (i.ok ? "ok" : "FAIL") << "] " << i.label;
    if (i.expected == "true") {
      if (!i.ok || i.computed != "true") out << ": " << i.computed;
    } else {
      out << ": " << i.computed;
      if (!i.ok) out << " (expected " << i.expected << ")";
    }
    out << "\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

std::string format_orbits(const std::string& id, const std::vector<OrbitCounts>& counts) {
  std::ostringstream out;
  out << "orbits of " << id << "\n";
  out << "  degree  free  order2  gamma  delta\n";
  for (const auto& c : counts) {
    out << "  " << c.degree << "  " << c.free << "  " << c.order2 << "  " << c.gamma << "  " << c.delta << "\n";
  }
  return out.str();
}

}  // namespace matchhom
