#include "iassr/scenario.hpp"

#include <cmath>
#include <limits>

#include "iassr/errors.hpp"
#include "iassr/linalg.hpp"

namespace iassr {

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::Config, m); };
  if (num_bs != kNumBs) fail("num_bs must be 3");
  if (nr < 1 || nt < 2 * nr) fail("need Nt >= 2*Nr >= 2");
  if (!(spacing_ratio > 0.0)) fail("spacing_ratio must be positive");
  if (!(carrier_hz > 0.0)) fail("carrier_hz must be positive");
  if (!(cell_radius_m > 0.0) || !(site_distance_m > 0.0)) fail("distances must be positive");
  if (!(sector_half_width_deg > 0.0 && sector_half_width_deg <= 90.0)) fail("sector width");
  if (!(reference_distance_m > 0.0)) fail("reference_distance_m must be positive");
  if (!(noise_variance > 0.0)) fail("noise_variance must be positive");
  if (coherence_T < 1) fail("coherence_T must be >= 1");
  if (!(feedback_rate_F > 0.0)) fail("feedback_rate_F must be positive");
  if (quant_bits_Q < 0) fail("quant_bits_Q must be >= 0");
  if (!(eigen_threshold > 0.0 && eigen_threshold < 1.0)) fail("eigen_threshold must lie in (0,1)");
  if (!(ue_correlation >= 0.0 && ue_correlation < 1.0)) fail("ue_correlation must lie in [0,1)");
}

void Scenario::validate() const {
  config.validate();
  for (const auto& c : clusters) {
    if (!(c.ring_radius_m > 0.0)) throw Error(ErrorCode::Config, "ring_radius_m must be positive");
    if (c.num_users < 1) throw Error(ErrorCode::Config, "num_users must be >= 1");
  }
}

BsPose bs_pose(const ScenarioConfig& cfg, int bs) {
  if (bs < 0 || bs >= kNumBs) throw Error(ErrorCode::InvalidArgument, "bs index");
  const double a = kPi / 2.0 + 2.0 * kPi * bs / kNumBs;
  BsPose p;
  p.position = {cfg.site_distance_m * std::cos(a), cfg.site_distance_m * std::sin(a)};
  p.broadside = std::atan2(-p.position.y, -p.position.x);
  return p;
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

static double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a - kPi;
}

AngularSupport aod_and_spread(const ClusterSpec& cluster, const BsPose& pose) {
  const double dx = cluster.position.x - pose.position.x;
  const double dy = cluster.position.y - pose.position.y;
  const double d = std::hypot(dx, dy);
  if (!(d > 0.0)) throw Error(ErrorCode::Geometry, "cluster coincides with BS");
  return {wrap_angle(std::atan2(dy, dx) - pose.broadside), std::atan(cluster.ring_radius_m / d)};
}

AngularSupport aod_and_spread(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs) {
  return aod_and_spread(cluster, bs_pose(cfg, bs));
}

double path_loss(double distance_m, double carrier_hz) {
  if (!(distance_m > 0.0)) throw Error(ErrorCode::Geometry, "cluster coincides with BS");
  const double lambda = kSpeedOfLight / carrier_hz;
  const double g = lambda / (4.0 * kPi * distance_m);
  return g * g;
}

double path_loss(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs) {
  return path_loss(distance(cluster.position, bs_pose(cfg, bs).position), cfg.carrier_hz);
}

double relative_path_gain(const ScenarioConfig& cfg, double distance_m) {
  return path_loss(distance_m, cfg.carrier_hz) / path_loss(cfg.reference_distance_m, cfg.carrier_hz);
}

LinkGeometry link_geometry(const ScenarioConfig& cfg, const ClusterSpec& cluster, int bs) {
  const BsPose pose = bs_pose(cfg, bs);
  const AngularSupport a = aod_and_spread(cluster, pose);
  LinkGeometry g;
  g.distance = distance(cluster.position, pose.position);
  g.theta = a.theta;
  g.delta = a.delta;
  g.path_gain = path_loss(g.distance, cfg.carrier_hz);
  g.visible = std::abs(a.theta) <= cfg.sector_half_width_deg * kPi / 180.0;
  return g;
}

ClusterState cluster_state(const Scenario& s, int cluster, Assignment a) {
  ClusterState st;
  for (int i = 0; i < kNumBs; ++i) st.links[i] = link_geometry(s.config, s.clusters.at(cluster), i);
  st.assignment = a;
  return st;
}

int nearest_bs(const ScenarioConfig& cfg, const ClusterSpec& cluster) {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (int i = 0; i < kNumBs; ++i) {
    const double d = distance(cluster.position, bs_pose(cfg, i).position);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return best;
}

Scenario default_scenario() {
  Scenario s;
  // Two centre clusters per cell at 360-400 m, then three edge clusters around the
  // coordination point (860-970 m from every BS).
  const Point pos[] = {
      {-127.1, 537.4}, {168.5, 603.6},  {-401.9, -378.8}, {-607.0, -155.8}, {529.0, -158.6},
      {438.5, -447.8}, {17.2, -3.1},    {-18.3, 60.4},    {-56.4, -7.5},
  };
  int id = 0;
  for (const Point& p : pos) s.clusters.push_back({id++, p, 25.0, 3});
  return s;
}

}  // namespace iassr
