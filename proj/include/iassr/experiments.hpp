#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "iassr/channel.hpp"
#include "iassr/pipeline.hpp"
#include "iassr/scenario.hpp"

namespace iassr {

struct ExperimentSpec {
  std::string figure;  // fig2 .. fig11
  std::vector<double> snr_db;
  std::vector<int> coherence_T;
  std::vector<double> log10_alpha;  // fig8
  std::vector<double> distances_m;  // fig2
  std::vector<Scheme> schemes;
  int trials = 100;
  std::uint64_t seed = 1;
  int clusters_per_cell = 3;  // fig9 random layouts
  Execution exec = Execution::Parallel;

  void validate() const;
};

struct ResultRow {
  std::string sweep;
  std::string scheme;
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;
  int trials = 0;
};

const std::vector<std::string>& figure_ids();

// Grids and scheme set used when the caller does not override them.
ExperimentSpec default_spec(const std::string& figure, const ScenarioConfig& cfg);

std::vector<ResultRow> run_experiment(const Scenario& s, const ExperimentSpec& spec);

// Random layout with `per_cell` clusters inside every sector.
Scenario random_scenario(const ScenarioConfig& cfg, int per_cell, std::uint64_t seed);

struct TrainingMse {
  double center = 0.0;
  double edge = 0.0;
};

// LS estimation of every effective channel of `plan` from one round of
// training at per-stream power P(snr_db). Without interference each cluster
// trains alone.
TrainingMse training_mse(const NetworkStatistics& st, const TransmissionPlan& plan,
                         const ChannelRealization& h, double snr_db, bool interference,
                         std::uint64_t seed);

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::string format_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_csv(const std::string& text);

}  // namespace iassr
