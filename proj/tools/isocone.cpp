#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "isocone/estimators.hpp"
#include "isocone/experiment.hpp"
#include "isocone/io.hpp"
#include "isocone/levels.hpp"
#include "isocone/limit_law.hpp"
#include "isocone/parallel.hpp"
#include "isocone/preorder.hpp"
#include "isocone/solver.hpp"

namespace fs = std::filesystem;
using namespace isocone;

namespace {

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("ISOCONE_SEED");
  if (!s) return fallback;
  return std::strtoull(s, nullptr, 10);
}

int element_index(const PreOrder& p, const std::string& token) {
  for (int i = 0; i < p.size(); ++i) {
    if (p.elements()[i] == token) return i;
  }
  // fall back to a 0-based numeric index
  try {
    size_t pos = 0;
    int idx = std::stoi(token, &pos);
    if (pos == token.size() && idx >= 0 && idx < p.size()) return idx;
  } catch (const std::exception&) {
  }
  throw std::runtime_error("unknown element: " + token);
}

void write_or_print_vector(const std::string& path, const std::vector<double>& v) {
  if (path.empty()) {
    for (double x : v) std::cout << format_double(x) << '\n';
  } else {
    write_vector_csv(path, v);
  }
}

void write_or_print_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(path, j);
  }
}

LevelPartition reference_partition(const PreOrder& p, std::vector<double> g0, bool antitonic,
                                   int truncate_m) {
  if (antitonic) {
    for (double& v : g0) v = -v;
  }
  LevelPartition lp = truncate_m > 0 ? truncated_level_partition(p, g0, truncate_m)
                                     : level_partition(p, g0);
  if (antitonic) {
    for (auto& s : lp.sets) s.value = -s.value;
  }
  return lp;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isotonic regression over finite pre-ordered sets"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)");

  // solve
  auto* solve = app.add_subcommand("solve", "weighted least-squares isotonic projection");
  std::string s_preorder, s_values, s_weights, s_out, s_diag;
  bool s_antitonic = false;
  solve->add_option("--preorder", s_preorder)->required();
  solve->add_option("--values", s_values)->required();
  solve->add_option("--weights", s_weights);
  solve->add_flag("--antitonic", s_antitonic);
  solve->add_option("--out", s_out, "fitted vector CSV (default: stdout)");
  solve->add_option("--diag", s_diag, "diagnostics JSON");

  // partition
  auto* part = app.add_subcommand("partition", "comparable level sets of a reference");
  std::string p_preorder, p_reference, p_out;
  int p_truncate = 0;
  bool p_antitonic = false;
  part->add_option("--preorder", p_preorder)->required();
  part->add_option("--reference", p_reference)->required();
  part->add_option("--truncate", p_truncate, "keep M largest-|value| level sets");
  part->add_flag("--antitonic", p_antitonic, "reference is antitonic");
  part->add_option("--out", p_out);

  // fit-pmf
  auto* fpmf = app.add_subcommand("fit-pmf", "empirical pmf and its antitonic projection");
  std::string fp_preorder, fp_draws, fp_basic, fp_iso;
  fpmf->add_option("--preorder", fp_preorder)->required();
  fpmf->add_option("--draws", fp_draws)->required();
  fpmf->add_option("--out-basic", fp_basic);
  fpmf->add_option("--out-isotonized", fp_iso);

  // fit-reg
  auto* freg = app.add_subcommand("fit-reg", "cell means and their isotonic projection");
  std::string fr_preorder, fr_pairs, fr_basic, fr_iso;
  freg->add_option("--preorder", fr_preorder)->required();
  freg->add_option("--pairs", fr_pairs, "CSV lines: element,response")->required();
  freg->add_option("--out-basic", fr_basic);
  freg->add_option("--out-isotonized", fr_iso);

  // simulate
  auto* sim = app.add_subcommand("simulate", "finite-sample vs limit-law Monte Carlo");
  std::string m_scenario, m_preorder, m_g0, m_out;
  int m_n = 10000, m_reps = 2000;
  std::uint64_t m_seed = env_seed(1);
  double m_sigma = 1.0;
  sim->add_option("--scenario", m_scenario, "pmf|reg")->required();
  sim->add_option("--preorder", m_preorder)->required();
  sim->add_option("--g0", m_g0)->required();
  sim->add_option("--n", m_n);
  sim->add_option("--reps", m_reps);
  sim->add_option("--seed", m_seed);
  sim->add_option("--sigma", m_sigma);
  sim->add_option("--out", m_out, "output directory")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a packaged experiment config");
  std::string e_config, e_out;
  exp->add_option("--config", e_config)->required();
  exp->add_option("--out", e_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // 0 covers --help / --version
  }
  set_default_threads(threads);

  try {
    if (*solve) {
      PreOrder p = read_preorder(s_preorder);
      WeightedFunction f;
      f.values = read_vector_csv(s_values);
      f.weights = s_weights.empty() ? std::vector<double>(p.size(), 1.0)
                                    : read_vector_csv(s_weights);
      IsotonicFit fit = s_antitonic ? antitonic_regression(p, f) : isotonic_regression(p, f);
      write_or_print_vector(s_out, fit.fitted);
      if (!s_diag.empty()) {
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& b : fit.blocks) {
          nlohmann::json members = nlohmann::json::array();
          for (int i : b) members.push_back(p.elements()[i]);
          blocks.push_back(members);
        }
        write_json_file(s_diag,
                        {{"objective", fit.objective},
                         {"blocks", blocks},
                         {"chain_components", fit.diagnostics.chain_components},
                         {"cut_components", fit.diagnostics.cut_components},
                         {"maxflow_calls", fit.diagnostics.maxflow_calls}});
      }
    } else if (*part) {
      PreOrder p = read_preorder(p_preorder);
      std::vector<double> g0 = read_vector_csv(p_reference);
      LevelPartition lp = reference_partition(p, g0, p_antitonic, p_truncate);
      write_or_print_json(p_out, level_partition_to_json(p, lp));
    } else if (*fpmf) {
      PreOrder p = read_preorder(fp_preorder);
      Sample sample;
      sample.kind = Sample::Kind::PmfDraws;
      std::ifstream in(fp_draws);
      if (!in) throw std::runtime_error("cannot open " + fp_draws);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        sample.draws.push_back(element_index(p, line));
      }
      EstimatorOutput out = empirical_pmf(p, sample);
      write_or_print_vector(fp_basic, out.basic.values);
      write_or_print_vector(fp_iso, out.isotonized.fitted);
    } else if (*freg) {
      PreOrder p = read_preorder(fr_preorder);
      Sample sample;
      sample.kind = Sample::Kind::RegressionPairs;
      std::ifstream in(fr_pairs);
      if (!in) throw std::runtime_error("cannot open " + fr_pairs);
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.rfind(',');
        if (comma == std::string::npos) {
          throw std::runtime_error("expected element,response: " + line);
        }
        int idx = element_index(p, line.substr(0, comma));
        sample.pairs.emplace_back(idx, std::stod(line.substr(comma + 1)));
      }
      EstimatorOutput out = regression_means(p, sample);
      write_or_print_vector(fr_basic, out.basic.values);
      write_or_print_vector(fr_iso, out.isotonized.fitted);
    } else if (*sim) {
      PreOrder p = read_preorder(m_preorder);
      std::vector<double> g0 = read_vector_csv(m_g0);
      const int s = p.size();
      fs::create_directories(m_out);

      std::vector<std::vector<double>> finite, limit;
      if (m_scenario == "pmf") {
        LevelPartition lp = reference_partition(p, g0, true, 0);
        std::vector<double> unit(s, 1.0);
        LimitSpec spec;
        spec.kind = LimitSpec::CovKind::Multinomial;
        spec.pmf = g0;
        spec.antitonic = true;
        limit = sample_limit(spec, p, lp, unit, m_reps, m_seed + 1);
        FiniteSampleScenario fin;
        fin.kind = FiniteSampleScenario::Kind::Pmf;
        fin.g0 = g0;
        finite = finite_sample_law(fin, p, m_n, m_reps, m_seed);
      } else if (m_scenario == "reg") {
        LevelPartition lp = reference_partition(p, g0, false, 0);
        std::vector<double> w(s, 1.0 / s);
        LimitSpec spec;
        spec.kind = LimitSpec::CovKind::RegressionDiagonal;
        spec.sigma = m_sigma;
        spec.design_weights = w;
        limit = sample_limit(spec, p, lp, w, m_reps, m_seed + 1);
        FiniteSampleScenario fin;
        fin.kind = FiniteSampleScenario::Kind::Regression;
        fin.g0 = g0;
        fin.sigma = m_sigma;
        finite = finite_sample_law(fin, p, m_n, m_reps, m_seed);
      } else {
        throw std::runtime_error("scenario must be pmf or reg");
      }
      MCReport report = compare_draws(finite, limit);
      report.n_used = m_n;
      report.seed = m_seed;
      write_matrix_csv((fs::path(m_out) / "finite_draws.csv").string(), finite);
      write_matrix_csv((fs::path(m_out) / "limit_draws.csv").string(), limit);
      write_json_file((fs::path(m_out) / "mcreport.json").string(), mc_report_to_json(report));
    } else if (*exp) {
      ExperimentConfig cfg = experiment_config_from_json(read_json_file(e_config));
      const char* env = std::getenv("ISOCONE_SEED");
      if (env) cfg.seed = std::strtoull(env, nullptr, 10);
      fs::create_directories(e_out);
      if (cfg.scenario == "figure1") {
        nlohmann::json summary = nlohmann::json::array();
        for (const DistanceSummary& s : run_figure1(cfg)) {
          std::vector<std::vector<double>> rows(s.l1_basic.size());
          for (size_t r = 0; r < rows.size(); ++r) {
            rows[r] = {s.l1_basic[r],      s.l2_basic[r],      s.hellinger_basic[r],
                       s.l1_isotonized[r], s.l2_isotonized[r], s.hellinger_isotonized[r]};
          }
          std::string name = "distances_n" + std::to_string(s.n) + ".csv";
          write_matrix_csv((fs::path(e_out) / name).string(), rows);
          summary.push_back(distance_summary_to_json(s));
        }
        write_json_file((fs::path(e_out) / "summary.json").string(),
                        {{"name", cfg.name}, {"seed", cfg.seed}, {"per_n", summary}});
      } else {
        MCReport report = run_limit_check(cfg);
        write_json_file((fs::path(e_out) / "mcreport.json").string(),
                        mc_report_to_json(report));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
