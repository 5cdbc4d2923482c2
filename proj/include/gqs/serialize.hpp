#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gqs/critical.hpp"
#include "gqs/property_report.hpp"
#include "gqs/solver.hpp"

namespace gqs {

inline constexpr const char* kArtifactVersion = "0.1.0";

nlohmann::json to_json(const PropertyReport& report);
nlohmann::json to_json(const EnergyBreakdown& energy);
nlohmann::json to_json(const ConcentrationDiagnostic& diag);
nlohmann::json to_json(const LevelCertificate& cert);
nlohmann::json to_json(const SolveReport& report);  // scalars only; fields go to CSV
nlohmann::json to_json(const SweepReport& report);
nlohmann::json to_json(const std::vector<LevelBound>& bounds);

void write_text(const std::string& path, const std::string& content);
void write_field_csv(const std::string& path, const Field& field);
void write_sweep_csv(const std::string& path, const SweepReport& report);
void write_level_csv(const std::string& path, const std::vector<LevelBound>& bounds);

std::string grid_fingerprint(int dimension, double radius, int nodes);

// One JSON line per run, appended; wall time lives here, never in reports.
void append_manifest(const std::string& path, const std::string& command,
                     const nlohmann::json& config_echo, const std::string& fingerprint,
                     double wall_ms, const std::vector<std::string>& outputs, bool pass);

void print_property_table(const PropertyReport& report, const std::string& title);

}  // namespace gqs
