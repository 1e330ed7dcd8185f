#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace iassr {

inline constexpr int kNumBs = 3;
inline constexpr double kSpeedOfLight = 299792458.0;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ScenarioConfig {
  int num_bs = kNumBs;
  int nt = 128;
  int nr = 2;
  double spacing_ratio = 0.5;  // tau / lambda
  double carrier_hz = 2.0e9;
  double cell_radius_m = 1000.0;
  // BS distance from the coordination point shared by the three sectors.
  double site_distance_m = 920.0;
  double sector_half_width_deg = 30.0;
  // SNR is defined against the path gain at this distance.
  double reference_distance_m = 350.0;
  double noise_variance = 1.0;
  double snr_db = 20.0;
  int coherence_T = 250;
  double feedback_rate_F = 4.0;
  int quant_bits_Q = 16;
  double eigen_threshold = 0.5;
  // Exponential user-side antenna correlation; 0 gives Phi = I.
  double ue_correlation = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct ClusterSpec {
  int id = 0;
  Point position;
  double ring_radius_m = 25.0;
  int num_users = 3;
};

struct Assignment {
  enum class Kind { Edge, Center };
  Kind kind = Kind::Edge;
  int bs = -1;  // serving BS for center clusters

  static Assignment edge() { return {Kind::Edge, -1}; }
  static Assignment center(int bs) { return {Kind::Center, bs}; }
  bool is_edge() const { return kind == Kind::Edge; }
  bool operator==(const Assignment&) const = default;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<ClusterSpec> clusters;

  void validate() const;
};

// BS position plus array broadside direction (radians, world frame).
struct BsPose {
  Point position;
  double broadside = 0.0;
};

struct AngularSupport {
  double theta = 0.0;  // AoD relative to broadside
  double delta = 0.0;  // half-width of the ring's angular support
};

struct LinkGeometry {
  double distance = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double path_gain = 0.0;  // linear, FSPL
  bool visible = false;    // inside the BS sector
};

struct ClusterState {
  std::array<LinkGeometry, kNumBs> links;
  Assignment assignment;
};

BsPose bs_pose(const ScenarioConfig& cfg, int bs);
double distance(Point a, Point b);

AngularSupport aod_and_spread(const ClusterSpec& cluster, const BsPose& pose);
AngularSupport aod_and_spread(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs);

double path_loss(double distance_m, double carrier_hz);
double path_loss(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs);

// Path gain normalised so the reference distance maps to 1.
double relative_path_gain(const ScenarioConfig& cfg, double distance_m);

LinkGeometry link_geometry(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs);
ClusterState cluster_state(const Scenario& s, int cluster, Assignment a = {});

int nearest_bs(const ScenarioConfig& cfg, const ClusterSpec& cluster);

Scenario default_scenario();

// INI-style config; see config/default.cfg.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& s);

}  // namespace iassr
