#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "isocone/experiment.hpp"
#include "isocone/levels.hpp"
#include "isocone/limit_law.hpp"
#include "isocone/preorder.hpp"

namespace isocone {

// 17 significant digits; round-trips any double through decimal text.
std::string format_double(double v);

// One value per line; a leading non-numeric line is treated as a header.
std::vector<double> read_vector_csv(const std::string& path);
void write_vector_csv(const std::string& path, const std::vector<double>& v);
void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& rows);

// {"elements": [...], "edges": [["a","b"], ...]} or the {"grid": [5,5]}
// shorthand.
PreOrder preorder_from_json(const nlohmann::json& j);
PreOrder read_preorder(const std::string& path);

nlohmann::json level_partition_to_json(const PreOrder& p, const LevelPartition& lp);
nlohmann::json mc_report_to_json(const MCReport& report);
nlohmann::json distance_summary_to_json(const DistanceSummary& s);

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace isocone
