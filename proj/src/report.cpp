#include "h2sw/report.hpp"

#include <ostream>
#include <stdexcept>

#include "h2sw/io.hpp"

namespace h2sw {

double RunReport::result(const std::string& key) const {
  for (const auto& [k, v] : results) {
    if (k == key) return v;
  }
  throw std::out_of_range("no result named '" + key + "'");
}

void RunReport::write_text(std::ostream& out) const {
  out << "command=" << command << "\n";
  out << "seed=" << seed << "\n";
  for (const auto& [k, v] : config) out << "config." << k << "=" << v << "\n";
  for (const auto& [k, v] : results) out << "result." << k << "=" << io::format_number(v) << "\n";
  for (const auto& [k, v] : timings_ms) out << "time." << k << "_ms=" << io::format_number(v) << "\n";
  for (const auto& note : notes) out << "note=" << note << "\n";
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["seed"] = seed;
  j["config"] = nlohmann::json::object();
  for (const auto& [k, v] : config) j["config"][k] = v;
  j["results"] = nlohmann::json::object();
  for (const auto& [k, v] : results) j["results"][k] = v;
  j["timings_ms"] = nlohmann::json::object();
  for (const auto& [k, v] : timings_ms) j["timings_ms"][k] = v;
  j["notes"] = notes;
  return j;
}

}  // namespace h2sw
