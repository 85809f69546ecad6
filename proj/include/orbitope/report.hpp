#pragma once

#include <string>

#include "json.hpp"
#include "orbitope/rng.hpp"

namespace orbitope {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchema = "orbitope/1";

/// Standard report envelope. Deterministic: identical command + config + seed
/// + results serialize to identical bytes. Wall time is logged to stderr by
/// the CLI, not embedded, to keep the bytes reproducible.
inline nlohmann::json make_report(const std::string& command, const nlohmann::json& config,
                                  RngSeed seed, const nlohmann::json& results) {
  nlohmann::json r;
  r["schema"] = kSchema;
  r["version"] = kToolVersion;
  r["command"] = command;
  r["config"] = config;
  r["seed"] = seed.value;
  r["results"] = results;
  return r;
}

/// Canonical serialization used everywhere a Report is written.
inline std::string report_bytes(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace orbitope
