#include "isocone/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace isocone {

using nlohmann::json;

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<double> read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      size_t pos = 0;
      double v = std::stod(line, &pos);
      out.push_back(v);
    } catch (const std::exception&) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw std::runtime_error("cannot parse number in " + path + ": " + line);
    }
    first = false;
  }
  if (out.empty()) throw std::runtime_error("no values in " + path);
  return out;
}

void write_vector_csv(const std::string& path, const std::vector<double>& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (double x : v) out << format_double(x) << '\n';
}

void write_matrix_csv(const std::string& path, const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
}

PreOrder preorder_from_json(const json& j) {
  if (j.contains("grid")) {
    return grid_preorder(j.at("grid").get<std::vector<int>>());
  }
  auto elements = j.at("elements").get<std::vector<std::string>>();
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::runtime_error("edge must be a two-element array");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return PreOrder(std::move(elements), edges);
}

PreOrder read_preorder(const std::string& path) {
  return preorder_from_json(read_json_file(path));
}

json level_partition_to_json(const PreOrder& p, const LevelPartition& lp) {
  json sets = json::array();
  for (const auto& s : lp.sets) {
    json members = json::array();
    for (int i : s.members) members.push_back(p.elements()[i]);
    sets.push_back({{"component", s.component},
                    {"level", s.level},
                    {"value", s.value},
                    {"members", members}});
  }
  json out{{"sets", sets}};
  out["epsilon_tilde"] =
      std::isinf(lp.epsilon_tilde) ? json("inf") : json(lp.epsilon_tilde);
  if (!lp.tail_set.empty()) {
    json tail = json::array();
    for (int i : lp.tail_set) tail.push_back(p.elements()[i]);
    out["tail_set"] = tail;
  }
  return out;
}

json mc_report_to_json(const MCReport& report) {
  json functionals = json::array();
  for (const auto& f : report.functionals) {
    functionals.push_back({{"name", f.name}, {"ks", f.ks}});
  }
  return {{"n", report.n_used},
          {"replicates", report.replicates},
          {"seed", report.seed},
          {"functionals", functionals}};
}

json distance_summary_to_json(const DistanceSummary& s) {
  json q = json::object();
  for (const auto& [name, qs] : s.quartiles) {
    q[name] = {{"min", qs.min}, {"q1", qs.q1}, {"median", qs.median},
               {"q3", qs.q3}, {"max", qs.max}};
  }
  return {{"n", s.n},
          {"replicates", static_cast<int>(s.l1_basic.size())},
          {"hellinger_convention", "unsquared"},
          {"quartiles", q}};
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.name = j.value("name", std::string("experiment"));
  cfg.scenario = j.at("scenario").get<std::string>();
  if (j.contains("grid")) cfg.dims = j.at("grid").get<std::vector<int>>();
  if (j.contains("q")) cfg.q = j.at("q").get<std::vector<double>>();
  if (j.contains("g0")) cfg.g0 = j.at("g0").get<std::vector<double>>();
  if (j.contains("n")) cfg.n_list = j.at("n").get<std::vector<int>>();
  cfg.replicates = j.value("replicates", 1000);
  cfg.seed = j.value("seed", static_cast<std::uint64_t>(1));
  cfg.sigma = j.value("sigma", 1.0);
  return cfg;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace isocone
