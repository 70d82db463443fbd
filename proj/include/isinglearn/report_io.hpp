#pragma once

#include <string>

#include <json.hpp>

#include "isinglearn/learner.hpp"
#include "isinglearn/model.hpp"
#include "isinglearn/verifier.hpp"

namespace ising {

inline constexpr int kFormatVersion = 1;

// Model files: {format_version, p, d, alpha, beta, h,
//               edges: [{i, j, theta}...], fields: [...]}
nlohmann::json model_to_json(const IsingModel& model);
IsingModel model_from_json(const nlohmann::json& j);
void write_model_file(const IsingModel& model, const std::string& path);
IsingModel read_model_file(const std::string& path);

nlohmann::json report_to_json(const RecoveryReport& report);
std::string report_edges_csv(const RecoveryReport& report);

nlohmann::json property_report_to_json(const PropertyReport& report);
std::string property_report_table(const PropertyReport& report);
std::string property_report_csv(const PropertyReport& report);

}  // namespace ising
