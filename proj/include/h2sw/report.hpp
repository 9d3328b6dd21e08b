#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace h2sw {

/// Outcome of one CLI command. Every numeric result is a pure function of
/// the inputs and `config`; timings are the only non-reproducible fields.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, double>> results;
  std::vector<std::pair<std::string, double>> timings_ms;
  std::vector<std::string> notes;

  void set(const std::string& key, const std::string& value) { config.emplace_back(key, value); }
  void add(const std::string& key, double value) { results.emplace_back(key, value); }
  void time(const std::string& key, double ms) { timings_ms.emplace_back(key, ms); }

  /// Returns the first result named `key`; throws std::out_of_range if absent.
  double result(const std::string& key) const;

  /// key=value lines.
  void write_text(std::ostream& out) const;
  nlohmann::json to_json() const;
};

}  // namespace h2sw
